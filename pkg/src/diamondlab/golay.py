"""Binary Golay code in MOG labeling, octads, M24 and the octad stabilizer.

Points are numbered ``4 * column + row`` in a 4 x 6 array.  The brick is
columns 0-1 (points 0-7); the square is columns 2-5, and square point
``8 + 4c + r`` is pattern cell ``(r, c)``.  The embedded generator matrix and
M24 generators are re-verified every time they are loaded.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb
from pathlib import Path

import numpy as np

from .geometry import ProjLine, four_partition, hyperplane_sets, lines
from .perm import GroupSet, Perm, check_perm, compose, pack
from .schreier import StabilizerChain

DATA_DIR = Path(__file__).parent / "data"
GOLAY_FILE = DATA_DIR / "golay_mog.txt"
M24_FILE = DATA_DIR / "m24_generators.txt"

N_POINTS = 24
BRICK = 0xFF
SQUARE = ((1 << N_POINTS) - 1) ^ BRICK
BRICK_POINTS = tuple(range(8))

POINT_OF_CELL = tuple(8 + 4 * (x % 4) + x // 4 for x in range(16))
CELL_OF_POINT = {p: x for x, p in enumerate(POINT_OF_CELL)}

WEIGHT_DISTRIBUTION = {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}
OCTAD_STABILIZER_ORDER = 322_560
M24_ORDER = 759 * OCTAD_STABILIZER_ORDER


class GolayValidationError(AssertionError):
    """Embedded data failed a check; ``check`` names which one."""

    def __init__(self, check: str, detail: str):
        super().__init__(f"{check}: {detail}")
        self.check = check


def popcount(x: int) -> int:
    return bin(x).count("1")


def support(word: int) -> list[int]:
    return [p for p in range(N_POINTS) if word >> p & 1]


def mask_of(points) -> int:
    w = 0
    for p in points:
        w |= 1 << p
    return w


def square_to_cells(word: int) -> int:
    """Square part of a 24-bit word as a 16-bit cell mask."""
    return sum(1 << CELL_OF_POINT[p] for p in support(word & SQUARE))


def _data_lines(path: Path) -> list[str]:
    return [ln.strip() for ln in path.read_text().splitlines() if ln.strip() and not ln.startswith("#")]


def read_generator_matrix(path: Path | str | None = None) -> list[int]:
    rows = []
    for ln in _data_lines(Path(path or GOLAY_FILE)):
        if len(ln) != N_POINTS or set(ln) - {"0", "1"}:
            raise GolayValidationError("format", f"bad generator row {ln!r}")
        rows.append(sum(1 << i for i, ch in enumerate(ln) if ch == "1"))
    return rows


def read_m24_generators(path: Path | str | None = None) -> list[Perm]:
    gens = []
    for ln in _data_lines(Path(path or M24_FILE)):
        try:
            gens.append(check_perm([int(t) for t in ln.split()], N_POINTS))
        except ValueError as exc:
            raise GolayValidationError("format", f"bad generator line {ln!r}: {exc}") from exc
    return gens


def _rank(rows) -> int:
    pivots: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top not in pivots:
                pivots[top] = r
                break
            r ^= pivots[top]
    return len(pivots)


@dataclass(frozen=True)
class GolayCode:
    rows: tuple[int, ...]

    @cached_property
    def codewords(self) -> list[int]:
        words = [0]
        for r in self.rows:
            words += [w ^ r for w in words]
        return sorted(words)

    @cached_property
    def codeword_set(self) -> frozenset[int]:
        return frozenset(self.codewords)

    def __contains__(self, word: int) -> bool:
        return word in self.codeword_set

    def weight_distribution(self) -> dict[int, int]:
        return dict(sorted(Counter(popcount(w) for w in self.codewords).items()))

    def octads(self) -> list[int]:
        return [w for w in self.codewords if popcount(w) == 8]


def build_golay(rows: list[int] | None = None) -> GolayCode:
    """Load (or take) the generator matrix and verify everything needed downstream."""
    rows = read_generator_matrix() if rows is None else list(rows)
    if len(rows) != 12 or _rank(rows) != 12:
        raise GolayValidationError("dimension", f"{len(rows)} rows of rank {_rank(rows)}, expected 12")
    for a in rows:
        for b in rows:
            if popcount(a & b) % 2:
                raise GolayValidationError("self-orthogonality", f"rows {a:024b} and {b:024b} meet oddly")
    code = GolayCode(tuple(rows))
    dist = code.weight_distribution()
    if dist != WEIGHT_DISTRIBUTION:
        raise GolayValidationError("weight distribution", f"got {dist}")
    if BRICK not in code:
        raise GolayValidationError("brick", "the brick (points 0-7) is not a codeword")
    return code


def enumerate_octads(code: GolayCode) -> list[int]:
    return code.octads()


class SteinerFailure(AssertionError):
    pass


@dataclass
class SteinerReport:
    octads: int
    five_sets: int
    histogram: dict[int, int]
    intersection_profile: dict[int, int]

    def to_dict(self) -> dict:
        return {
            "octads": self.octads,
            "five_sets": self.five_sets,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "intersection_profile": {str(k): v for k, v in sorted(self.intersection_profile.items(), reverse=True)},
        }


def octads_through(octads: list[int], points) -> list[int]:
    m = mask_of(points)
    return [o for o in octads if o & m == m]


def intersection_profile(octads: list[int], block: int = BRICK) -> dict[int, int]:
    return dict(sorted(Counter(popcount(o & block) for o in octads).items(), reverse=True))


def verify_steiner(octads: list[int], strict: bool = True) -> SteinerReport:
    """Every 5-subset of the 24 points lies in exactly one octad."""
    cover: Counter[int] = Counter()
    for o in octads:
        for five in combinations(support(o), 5):
            cover[mask_of(five)] += 1
    total = comb(N_POINTS, 5)
    histogram = Counter(cover.values())
    if total - len(cover):
        histogram[0] = total - len(cover)
    report = SteinerReport(len(octads), total, dict(sorted(histogram.items())), intersection_profile(octads))
    if strict and report.histogram != {1: total}:
        bad = next((m for m, k in cover.items() if k != 1), None)
        if bad is None:
            bad = next(mask_of(f) for f in combinations(range(N_POINTS), 5) if mask_of(f) not in cover)
        raise SteinerFailure(f"5-set {support(bad)} covered {cover.get(bad, 0)} times")
    return report


# --- M24 -------------------------------------------------------------------------


def permute_word(g: Perm, word: int) -> int:
    return mask_of(g[p] for p in support(word))


def m24_group(gens: list[Perm] | None = None, octads: list[int] | None = None) -> StabilizerChain:
    gens = read_m24_generators() if gens is None else [check_perm(g, N_POINTS) for g in gens]
    octads = enumerate_octads(build_golay()) if octads is None else octads
    octad_set = set(octads)
    for i, g in enumerate(gens):
        if {permute_word(g, o) for o in octads} != octad_set:
            raise GolayValidationError("octad preservation", f"generator {i} does not preserve the octads")
    chain = StabilizerChain(gens, N_POINTS)
    if chain.order() != M24_ORDER:
        raise GolayValidationError("M24 order", f"chain order {chain.order()}, expected {M24_ORDER}")
    return chain


def octad_stabilizer(chain: StabilizerChain, block: int = BRICK) -> StabilizerChain:
    """Setwise stabilizer of ``block``, by a pruned search over a chain whose base starts inside it."""
    pts = support(block)
    chain = StabilizerChain(chain._all_strong(), chain.degree, pts)
    levels = chain.levels
    depth = next(
        (i for i in range(len(levels)) if all(all(g[p] == p for p in pts) for g in levels[i].gens)),
        len(levels),
    )
    inside = set(pts)
    found = []

    def search(level: int, h: Perm) -> None:
        if level == depth:
            if all(h[p] in inside for p in pts):
                found.append(h)
            return
        lvl = levels[level]
        for gamma in sorted(lvl.transversal):
            h2 = compose(h, lvl.transversal[gamma])
            if lvl.base_point in inside and h2[lvl.base_point] not in inside:
                continue
            search(level + 1, h2)

    search(0, tuple(range(chain.degree)))
    kernel_gens = levels[depth].gens if depth < len(levels) else []
    stab = StabilizerChain(kernel_gens, chain.degree, pts)
    for h in found:
        if not stab.contains(h):
            stab = stab.extended(h)
    return stab


class RestrictionFailure(AssertionError):
    pass


@dataclass
class RestrictionReport:
    stabilizer_order: int
    restricted_size: int
    kernel_size: int
    equals_group: bool
    witness: list[int] | None = None

    def to_dict(self) -> dict:
        return {
            "stabilizer_order": self.stabilizer_order,
            "restricted_size": self.restricted_size,
            "kernel_size": self.kernel_size,
            "equals_group": self.equals_group,
            "witness": self.witness,
        }


def restrict_to_square(elements: np.ndarray, group: GroupSet | None = None,
                       strict: bool = True) -> tuple[np.ndarray, RestrictionReport]:
    """Restrict brick-stabilizing permutations to the 16 square cells and compare with ``group``."""
    elements = np.asarray(elements, dtype=np.uint8)
    if np.any(elements[:, list(BRICK_POINTS)] >= 8):
        bad = elements[np.any(elements[:, list(BRICK_POINTS)] >= 8, axis=1)][0]
        raise RestrictionFailure(f"element {bad.tolist()} moves the brick")
    lookup = np.zeros(N_POINTS, dtype=np.uint8)
    for p, x in CELL_OF_POINT.items():
        lookup[p] = x
    restricted = lookup[elements[:, list(POINT_OF_CELL)]]
    keys = pack(restricted)
    unique = np.unique(keys)
    identity_key = pack(np.arange(16, dtype=np.uint8)[None, :])[0]
    kernel = int(np.count_nonzero(keys == identity_key))
    equals = group is not None and len(unique) == len(group) and bool(np.array_equal(unique, group.keys))
    witness = None
    if kernel > 1:
        witness = elements[np.flatnonzero(keys == identity_key)[1]].tolist()
    elif group is not None and not equals:
        missing = np.setdiff1d(unique, group.keys)
        if len(missing):
            witness = restricted[np.flatnonzero(keys == missing[0])[0]].tolist()
    report = RestrictionReport(len(elements), len(unique), kernel, bool(equals), witness)
    if strict and (kernel != 1 or len(unique) != len(elements) or (group is not None and not equals)):
        raise RestrictionFailure(
            f"restriction not faithful or differs from the group: kernel {kernel}, "
            f"{len(unique)} images of {len(elements)} elements, witness {witness}"
        )
    return restricted, report


# --- brick splits and lines ---------------------------------------------------------


class CorrespondenceFailure(AssertionError):
    pass


def _partition_key(classes) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(tuple(sorted(c)) for c in classes))


@dataclass
class CorrespondenceReport:
    splits: int
    lines_hit: int
    bijective: bool
    hyperplanes_match: bool
    mapping: dict[str, list[int]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "splits": self.splits,
            "lines_hit": self.lines_hit,
            "bijective": self.bijective,
            "hyperplanes_match": self.hyperplanes_match,
            "mapping": dict(sorted(self.mapping.items())),
        }


def split_label(half: int) -> str:
    a, b = sorted((half, BRICK ^ half))
    return "".join(map(str, support(a))) + "|" + "".join(map(str, support(b)))


def brick_split_correspondence(octads: list[int], strict: bool = True) -> tuple[dict[str, ProjLine], CorrespondenceReport]:
    """Map each 4|4 split of the brick to the line whose parallel class its octads cut out."""
    by_partition = {_partition_key(four_partition(l)): l for l in lines()}
    mapping: dict[str, ProjLine] = {}
    problems = []
    for half_pts in combinations(BRICK_POINTS, 4):
        h = mask_of(half_pts)
        parts = sorted(square_to_cells(o) for o in octads if o & BRICK == h)
        other = sorted(square_to_cells(o) for o in octads if o & BRICK == BRICK ^ h)
        cells = [[x for x in range(16) if m >> x & 1] for m in parts]
        covered = 0
        for m in parts:
            covered |= m
        if len(parts) != 4 or any(len(c) != 4 for c in cells) or covered != 0xFFFF:
            problems.append(f"split {split_label(h)}: octads do not partition the square")
            continue
        if parts != other:
            problems.append(f"split {split_label(h)}: complementary half gives a different partition")
            continue
        line = by_partition.get(_partition_key(cells))
        if line is None:
            problems.append(f"split {split_label(h)}: partition matches no line")
            continue
        mapping[split_label(h)] = line
    hit = set(mapping.values())
    bijective = len(mapping) == 35 and len(hit) == 35
    if not bijective:
        problems.append(f"{len(mapping)} splits map onto {len(hit)} lines")

    disjoint = sorted(square_to_cells(o) for o in octads if not o & BRICK)
    hyper_ok = disjoint == hyperplane_sets()
    if not hyper_ok:
        problems.append("brick-disjoint octads are not the 30 affine hyperplanes of the square")
    report = CorrespondenceReport(
        len(mapping), len(hit), bijective, hyper_ok,
        {k: list(v.points) for k, v in mapping.items()},
    )
    if strict and problems:
        raise CorrespondenceFailure("; ".join(problems))
    return mapping, report
