"""Square isometries acting on patterns, colour interchange, and the symmetry checks."""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import NamedTuple

from .tiles import N_CELLS, Pattern, TileType, encode

# Tile-type tables (indexed by digit 2d + s).  A clockwise quarter turn
# sends top -> right -> bottom -> left -> top; a mirror in the vertical
# axis swaps left and right.  Both flip the diagonal direction.
ROT_TILE = (3, 2, 0, 1)   # (d, s) -> (d ^ 1, s ^ d ^ 1)
FLIP_TILE = (2, 3, 0, 1)  # (d, s) -> (d ^ 1, s)

INTERCHANGE_TILE = (1, 0, 3, 2)


class SquareIsometry(NamedTuple):
    """``rot`` clockwise quarter turns, then a mirror in the vertical axis if ``flip``."""

    rot: int = 0
    flip: bool = False

    @property
    def name(self) -> str:
        return ISOMETRY_NAMES[(self.rot, self.flip)]

    def cell_image(self, r: int, c: int, side: int = 4) -> tuple[int, int]:
        for _ in range(self.rot):
            r, c = c, side - 1 - r
        if self.flip:
            c = side - 1 - c
        return r, c

    def tile_image(self, digit: int) -> int:
        for _ in range(self.rot):
            digit = ROT_TILE[digit]
        if self.flip:
            digit = FLIP_TILE[digit]
        return digit

    def compose(self, other: "SquareIsometry") -> "SquareIsometry":
        """``self o other`` (apply ``other`` first)."""
        return _COMPOSE[(self, other)]

    def inverse(self) -> "SquareIsometry":
        return next(h for h in ISOMETRIES if self.compose(h) == IDENTITY)


ISOMETRIES = tuple(SquareIsometry(rot, flip) for flip in (False, True) for rot in range(4))
IDENTITY = SquareIsometry(0, False)

ISOMETRY_NAMES = {
    (0, False): "id",
    (1, False): "rot90",
    (2, False): "rot180",
    (3, False): "rot270",
    (0, True): "mirror_v",     # vertical axis
    (1, True): "mirror_diag",  # main diagonal
    (2, True): "mirror_h",     # horizontal axis
    (3, True): "mirror_anti",  # anti-diagonal
}


def _cell_table(g: SquareIsometry) -> tuple[int, ...]:
    out = []
    for i in range(N_CELLS):
        r, c = g.cell_image(*divmod(i, 4))
        out.append(4 * r + c)
    return tuple(out)


CELL_TABLES = {g: _cell_table(g) for g in ISOMETRIES}
TILE_TABLES = {g: tuple(g.tile_image(k) for k in range(4)) for g in ISOMETRIES}


def _signature(g: SquareIsometry):
    return CELL_TABLES[g], TILE_TABLES[g]


_BY_SIGNATURE = {_signature(g): g for g in ISOMETRIES}
_COMPOSE = {}
for _a in ISOMETRIES:
    for _b in ISOMETRIES:
        cells = tuple(CELL_TABLES[_a][x] for x in CELL_TABLES[_b])
        tiles = tuple(TILE_TABLES[_a][k] for k in TILE_TABLES[_b])
        _COMPOSE[(_a, _b)] = _BY_SIGNATURE[(cells, tiles)]


def apply_isometry(g: SquareIsometry, p: Pattern) -> Pattern:
    cells, tiles = CELL_TABLES[g], TILE_TABLES[g]
    out = [0] * N_CELLS
    for i, k in enumerate(p.digits):
        out[cells[i]] = tiles[k]
    return Pattern(tuple(out))


def transform_tile(g: SquareIsometry, t: TileType) -> TileType:
    return TileType.from_digit(TILE_TABLES[g][t.digit])


def color_interchange(p: Pattern) -> Pattern:
    return Pattern(tuple(INTERCHANGE_TILE[k] for k in p.digits))


@dataclass(frozen=True)
class SymmetryProfile:
    ordinary: frozenset[SquareIsometry]
    interchange: frozenset[SquareIsometry]

    @property
    def symmetric(self) -> bool:
        """Has an ordinary or a colour-interchange symmetry."""
        return bool(self.ordinary or self.interchange)

    @property
    def shape(self) -> str:
        ordinary = ",".join(g.name for g in sorted(self.ordinary, key=ISOMETRIES.index)) or "-"
        interchange = ",".join(g.name for g in sorted(self.interchange, key=ISOMETRIES.index)) or "-"
        return f"ordinary={ordinary};interchange={interchange}"


def symmetry_profile(p: Pattern) -> SymmetryProfile:
    swapped = color_interchange(p)
    ordinary, interchange = set(), set()
    for g in ISOMETRIES:
        image = apply_isometry(g, p)
        if g != IDENTITY and image == p:
            ordinary.add(g)
        if image == swapped:
            interchange.add(g)
    return SymmetryProfile(frozenset(ordinary), frozenset(interchange))


def is_symmetric(p: Pattern) -> bool:
    return symmetry_profile(p).symmetric


CENTER_CELLS = (5, 6, 9, 10)


def center_lemma_check(p: Pattern) -> bool:
    """Some non-trivial (isometry, interchange) pair fixes the central 2x2 block and the whole pattern."""
    swapped = color_interchange(p)
    for g in ISOMETRIES:
        image = apply_isometry(g, p)
        for interchange in (False, True):
            if g == IDENTITY and not interchange:
                continue
            target = swapped if interchange else p
            if all(image.digits[i] == target.digits[i] for i in CENTER_CELLS) and image == target:
                return True
    return False


class TheoremFailure(AssertionError):
    def __init__(self, report: "TheoremReport"):
        super().__init__(f"{len(report.failures)} pattern(s) without symmetry: {', '.join(report.failures)}")
        self.report = report


@dataclass
class TheoremReport:
    total: int
    ordinary_count: int
    interchange_only_count: int
    failures: list[str]
    census: dict[str, int]
    interchange_isometries: dict[str, int] = field(default_factory=dict)
    center_lemma_failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and not self.center_lemma_failures

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "ordinary_count": self.ordinary_count,
            "interchange_only_count": self.interchange_only_count,
            "failures": list(self.failures),
            "census": dict(sorted(self.census.items())),
            "interchange_isometries": dict(sorted(self.interchange_isometries.items())),
            "center_lemma_failures": list(self.center_lemma_failures),
        }


def verify_theorem(patterns: Iterable[Pattern], strict: bool = True) -> TheoremReport:
    """Check the symmetry predicate on every pattern; raise :class:`TheoremFailure` on any miss."""
    patterns = sorted(set(patterns))
    census: Counter[str] = Counter()
    used: Counter[str] = Counter()
    ordinary = interchange_only = 0
    failures, center_failures = [], []
    for p in patterns:
        prof = symmetry_profile(p)
        census[prof.shape] += 1
        for g in prof.interchange:
            used[g.name] += 1
        if prof.ordinary:
            ordinary += 1
        elif prof.interchange:
            interchange_only += 1
        else:
            failures.append(encode(p))
        if not center_lemma_check(p):
            center_failures.append(encode(p))
    report = TheoremReport(
        total=len(patterns),
        ordinary_count=ordinary,
        interchange_only_count=interchange_only,
        failures=failures,
        census=dict(census),
        interchange_isometries=dict(used),
        center_lemma_failures=center_failures,
    )
    if strict and report.failures:
        raise TheoremFailure(report)
    return report
