"""GF(4)-valued patterns: sums, the affine ideal, and cut-line censuses.

A pattern becomes a function from cells to GF(4) via ``(d, s) -> s + d w``.
Sums are cellwise, so the additive group is GF(2)^32: sixteen shade bits and
sixteen direction bits.  Internally a pattern is packed into a 32-bit int,
shade grid in the low half and direction grid in the high half.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum

from .geometry import fit_affine_functional
from .perm import ClosureCapExceeded, closure_cap
from .tiles import N_CELLS, Gf4, Pattern, tile_edge_colors, tile_to_gf4

#: Size of the full symmetric-pattern ring quoted alongside the ideal.  Its
#: product is not defined here, so the number is carried but never checked.
RING_ORDER_UNVERIFIED = 4096

AFFINE_IDEAL_ORDER = 1024

_LOW = (1 << N_CELLS) - 1


@dataclass(frozen=True, order=True)
class Gf4Pattern:
    """Cell values in GF(4), coded 0..3 (bit 0: coefficient of 1, bit 1: of w)."""

    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != N_CELLS or any(v not in (0, 1, 2, 3) for v in self.values):
            raise ValueError(f"invalid GF(4) pattern {self.values!r}")

    @classmethod
    def from_pattern(cls, p: Pattern) -> "Gf4Pattern":
        return cls(tuple(tile_to_gf4(t).value for t in p))

    @classmethod
    def constant(cls, value: int | Gf4) -> "Gf4Pattern":
        v = value.value if isinstance(value, Gf4) else value
        return cls((v,) * N_CELLS)

    @classmethod
    def unpack(cls, word: int) -> "Gf4Pattern":
        return cls(tuple((word >> i & 1) | (word >> (N_CELLS + i) & 1) << 1 for i in range(N_CELLS)))

    def pack(self) -> int:
        word = 0
        for i, v in enumerate(self.values):
            word |= (v & 1) << i | (v >> 1) << (N_CELLS + i)
        return word

    def to_pattern(self) -> Pattern:
        # GF(4) code s + 2d coincides with the tile digit 2d + s
        return Pattern(self.values)

    def __getitem__(self, i: int) -> Gf4:
        return Gf4(self.values[i])

    def __add__(self, other: "Gf4Pattern") -> "Gf4Pattern":
        return Gf4Pattern(tuple(a ^ b for a, b in zip(self.values, other.values)))

    @property
    def s_grid(self) -> int:
        return self.pack() & _LOW

    @property
    def d_grid(self) -> int:
        return self.pack() >> N_CELLS


ZERO = Gf4Pattern.constant(0)


def _as_gf4(p: Gf4Pattern | Pattern) -> Gf4Pattern:
    return p if isinstance(p, Gf4Pattern) else Gf4Pattern.from_pattern(p)


def pattern_add(p: Gf4Pattern | Pattern, q: Gf4Pattern | Pattern) -> Gf4Pattern:
    return _as_gf4(p) + _as_gf4(q)


def is_affine_pattern(p: Gf4Pattern | Pattern) -> bool:
    """True iff the pattern, as a map GF(2)^4 -> GF(4), is affine."""
    p = _as_gf4(p)
    return all(fit_affine_functional(g, allow_zero=True) is not None for g in (p.s_grid, p.d_grid))


def affine_patterns() -> list[Gf4Pattern]:
    """All 1024 affine patterns, by direct parametrisation (linear part and constant per component)."""
    grids = sorted(
        sum(((bin(f & x).count("1") & 1) ^ c) << x for x in range(N_CELLS))
        for f in range(16) for c in (0, 1)
    )
    return sorted(Gf4Pattern.unpack(s | d << N_CELLS) for s in grids for d in grids)


def additive_closure(seeds: Iterable[Gf4Pattern | Pattern], cap: int | None = None) -> set[Gf4Pattern]:
    """The subgroup of (patterns, +) generated by ``seeds``."""
    cap = closure_cap() if cap is None else cap
    words = sorted({_as_gf4(p).pack() for p in seeds})
    if not words:
        raise ValueError("need at least one seed")
    group = {0}
    for w in words:
        if w in group:
            continue
        group |= {g ^ w for g in group}
        if len(group) > cap:
            raise ClosureCapExceeded(f"additive closure exceeds cap of {cap}")
    return {Gf4Pattern.unpack(w) for w in group}


# --- cut lines -----------------------------------------------------------------


class CutDefinition(str, Enum):
    CONSTANT_RELATION = "ConstantRelation"
    ALL_CONTRAST = "AllContrast"
    ALL_MATCH = "AllMatch"


SCOPES = ("both", "horizontal", "vertical")


def _cut_lines(scope: str):
    """Yield ``(line, [(cell_a, edge_a, cell_b, edge_b), ...])`` for the internal grid lines."""
    if scope not in SCOPES:
        raise ValueError(f"scope must be one of {SCOPES}")
    if scope in ("both", "horizontal"):
        for r in range(3):
            yield ("h", r), [(4 * r + c, "bottom", 4 * (r + 1) + c, "top") for c in range(4)]
    if scope in ("both", "vertical"):
        for c in range(3):
            yield ("v", c), [(4 * r + c, "right", 4 * r + c + 1, "left") for r in range(4)]


def relation_bits(p: Gf4Pattern | Pattern, scope: str = "both") -> dict[tuple[str, int], list[int]]:
    """Colour difference across each internal line, position by position."""
    pattern = _as_gf4(p).to_pattern()
    out = {}
    for line, spots in _cut_lines(scope):
        out[line] = [
            getattr(tile_edge_colors(pattern[a]), ea) ^ getattr(tile_edge_colors(pattern[b]), eb)
            for a, ea, b, eb in spots
        ]
    return out


def cuts_uninterrupted(p: Gf4Pattern | Pattern, definition: CutDefinition | str, scope: str = "both") -> bool:
    definition = CutDefinition(definition)
    for bits in relation_bits(p, scope).values():
        if definition is CutDefinition.CONSTANT_RELATION and len(set(bits)) != 1:
            return False
        if definition is CutDefinition.ALL_CONTRAST and not all(bits):
            return False
        if definition is CutDefinition.ALL_MATCH and any(bits):
            return False
    return True


# Edge colours as affine forms in (s, d) of one tile: (uses_s, uses_d, constant).
_EDGE_FORMS = {"top": (1, 0, 1), "bottom": (1, 0, 0), "left": (1, 1, 0), "right": (1, 1, 1)}


def _edge_form(cell: int, edge: str) -> tuple[int, int]:
    us, ud, k = _EDGE_FORMS[edge]
    return (us << cell) | (ud << (N_CELLS + cell)), k


def gf2_rank(rows: Sequence[int]) -> int:
    pivots: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top not in pivots:
                pivots[top] = r
                break
            r ^= pivots[top]
    return len(pivots)


def solution_count(equations: Sequence[tuple[int, int]], n_vars: int) -> int:
    """Number of solutions in GF(2)^n of ``mask . x = rhs`` for each ``(mask, rhs)``."""
    augmented = [mask << 1 | rhs for mask, rhs in equations]
    rank_aug = gf2_rank(augmented)
    rank = gf2_rank([mask for mask, _ in equations])
    return 0 if rank_aug != rank else 2 ** (n_vars - rank)


def cut_constraints(definition: CutDefinition | str, scope: str = "both") -> tuple[list[tuple[int, int]], int]:
    """The affine system on 32 pattern bits (plus one constant per line for ConstantRelation)."""
    definition = CutDefinition(definition)
    equations = []
    n_vars = 2 * N_CELLS
    for line, spots in _cut_lines(scope):
        if definition is CutDefinition.CONSTANT_RELATION:
            extra = 1 << n_vars
            n_vars += 1
        for a, ea, b, eb in spots:
            ma, ka = _edge_form(a, ea)
            mb, kb = _edge_form(b, eb)
            mask, const = ma ^ mb, ka ^ kb  # relation bit = mask . x + const
            if definition is CutDefinition.ALL_CONTRAST:
                equations.append((mask, 1 ^ const))
            elif definition is CutDefinition.ALL_MATCH:
                equations.append((mask, const))
            else:
                equations.append((mask | extra, const))
    return equations, n_vars


def cut_census(definition: CutDefinition | str, scope: str = "both",
               fixed: dict[int, int] | None = None) -> int:
    """Exact number of patterns meeting the definition, by rank of the constraint system.

    ``fixed`` pins pattern bits (index 0..31 in packed order) to values.
    """
    equations, n_vars = cut_constraints(definition, scope)
    for var, value in (fixed or {}).items():
        equations.append((1 << var, value))
    return solution_count(equations, n_vars)


def cut_census_slice(definition: CutDefinition | str, free_bits: Sequence[int], scope: str = "both",
                     base: int = 0) -> int:
    """Brute-force count over patterns equal to ``base`` outside ``free_bits``."""
    count = 0
    for values in itertools.product((0, 1), repeat=len(free_bits)):
        word = base
        for bit, v in zip(free_bits, values):
            word = (word & ~(1 << bit)) | (v << bit)
        if cuts_uninterrupted(Gf4Pattern.unpack(word), definition, scope):
            count += 1
    return count


@dataclass
class CutCensus:
    definition: str
    count: int
    equals_affine_set: bool
    affine_satisfying: int

    def to_dict(self) -> dict:
        return {
            "definition": self.definition,
            "count": self.count,
            "equals_affine_set": self.equals_affine_set,
            "affine_satisfying": self.affine_satisfying,
        }


def census_report(definition: CutDefinition | str, scope: str = "both",
                  affine: Sequence[Gf4Pattern] | None = None) -> CutCensus:
    definition = CutDefinition(definition)
    affine = affine_patterns() if affine is None else affine
    count = cut_census(definition, scope)
    satisfying = sum(cuts_uninterrupted(p, definition, scope) for p in affine)
    # equal sets: same size and one contains the other
    equal = count == len(affine) == satisfying
    return CutCensus(definition.value, count, equal, satisfying)

