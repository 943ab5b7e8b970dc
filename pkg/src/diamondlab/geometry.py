"""PG(3,2) as the space of nonzero linear functionals on cell coordinates.

A point is a 4-bit functional ``f``; its value on cell ``x`` is the parity
of ``f & x`` (cell indices are coordinate vectors, see :mod:`tiles`).
A line is a 3-set of functionals summing to zero.  Each pattern in the
orbit of the diamond figure has three affine component grids whose linear
parts form such a line: its *structure*.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple, Union

from .tiles import COMPONENTS, N_CELLS, Pattern, component_map, encode

_COORD_NAMES = ("r1", "r0", "c1", "c0")


def parity(x: int) -> int:
    return bin(x).count("1") & 1


class ProjPoint(NamedTuple):
    functional: int

    def __call__(self, cell: int) -> int:
        return parity(self.functional & cell)

    @property
    def label(self) -> str:
        """E.g. ``r0+c0`` for the functional summing those coordinates."""
        return "+".join(n for j, n in enumerate(_COORD_NAMES) if self.functional >> (3 - j) & 1)

    def grid(self, constant: int = 0) -> int:
        return sum((self(x) ^ constant) << x for x in range(N_CELLS))


@dataclass(frozen=True, order=True)
class ProjLine:
    points: tuple[int, int, int]

    def __post_init__(self):
        pts = tuple(sorted(int(p) for p in self.points))
        if len(set(pts)) != 3 or pts[0] ^ pts[1] ^ pts[2] or not all(0 < p < 16 for p in pts):
            raise ValueError(f"not a line of PG(3,2): {self.points!r}")
        object.__setattr__(self, "points", pts)

    @classmethod
    def through(cls, a: int, b: int) -> "ProjLine":
        return cls((a, b, a ^ b))

    def __contains__(self, point) -> bool:
        return int(point[0] if isinstance(point, ProjPoint) else point) in self.points

    def __iter__(self):
        return iter(self.points)

    @property
    def label(self) -> str:
        return "{" + ", ".join(ProjPoint(p).label for p in self.points) + "}"


def points() -> list[ProjPoint]:
    return [ProjPoint(f) for f in range(1, 16)]


def lines() -> list[ProjLine]:
    return sorted({ProjLine.through(a, b) for a, b in combinations(range(1, 16), 2)})


ROW_LINE = ProjLine((0b1000, 0b0100, 0b1100))
COLUMN_LINE = ProjLine((0b0010, 0b0001, 0b0011))


def fit_affine_functional(grid: int, allow_zero: bool = False) -> tuple[ProjPoint, int] | None:
    """Find ``(L, c)`` with ``grid(x) = L(x) + c`` on all cells, or None.

    ``L = 0`` (a constant grid) is accepted only with ``allow_zero``.
    """
    c = grid & 1
    f = 0
    for j in range(4):
        if (grid >> (1 << j) & 1) ^ c:
            f |= 1 << j
    for x in range(N_CELLS):
        if (grid >> x & 1) != parity(f & x) ^ c:
            return None
    if f == 0 and not allow_zero:
        return None
    return ProjPoint(f), c


def hyperplane_sets() -> list[int]:
    """The 30 affine hyperplanes of the cell space, as sorted 16-bit masks."""
    return sorted(p.grid(c) for p in points() for c in (0, 1))


class LineDiagram(NamedTuple):
    grid: int
    functional: ProjPoint
    constant: int


class StructureError(ValueError):
    def __init__(self, message: str, component: str | None = None):
        super().__init__(message)
        self.component = component


@dataclass(frozen=True)
class Structure:
    line: ProjLine
    diagrams: tuple[LineDiagram, LineDiagram, LineDiagram]  # S, D, SD

    def diagram(self, component: str) -> LineDiagram:
        return self.diagrams[COMPONENTS.index(component)]


StructureLike = Union[Structure, ProjLine]


def _line_of(s: StructureLike) -> ProjLine:
    return s.line if isinstance(s, Structure) else s


def structure_of(p: Pattern) -> Structure:
    diagrams = []
    for comp in COMPONENTS:
        grid = component_map(p, comp)
        fit = fit_affine_functional(grid)
        if fit is None:
            raise StructureError(f"component {comp} of {encode(p)} is not a nonconstant affine grid", comp)
        diagrams.append(LineDiagram(grid, *fit))
    funcs = [d.functional.functional for d in diagrams]
    for i in range(1, 3):
        if funcs[i] in funcs[:i]:
            raise StructureError(f"linear parts of {encode(p)} collide: {funcs}", COMPONENTS[i])
    return Structure(ProjLine(tuple(funcs)), tuple(diagrams))


class ClassificationError(AssertionError):
    pass


def classify(patterns: Iterable[Pattern]) -> dict[ProjLine, list[Pattern]]:
    """Group orbit patterns by structure line; checks the 35 x 24 shape."""
    classes: dict[ProjLine, list[Pattern]] = {}
    for p in sorted(set(patterns)):
        classes.setdefault(structure_of(p).line, []).append(p)
    classes = dict(sorted(classes.items()))
    problems = []
    if list(classes) != lines():
        problems.append(f"{len(classes)} structure lines found, expected all 35")
    bad = {l.label: len(ps) for l, ps in classes.items() if len(ps) != 24}
    if bad:
        problems.append(f"class sizes differ from 24: {bad}")
    if problems:
        raise ClassificationError("; ".join(problems))
    return classes


def skew(l1: StructureLike, l2: StructureLike) -> bool:
    l1, l2 = _line_of(l1), _line_of(l2)
    if l1 == l2:
        raise ValueError("skewness is defined for distinct lines")
    return not set(l1.points) & set(l2.points)


def four_partition(s: StructureLike, pair: tuple[int, int] | None = None) -> list[list[int]]:
    """Cells grouped by their values under two points of the line (cosets of a 2-dim subspace)."""
    line = _line_of(s)
    f1, f2 = pair if pair is not None else line.points[:2]
    if f1 not in line or f2 not in line or f1 == f2:
        raise ValueError("pair must be two distinct points of the line")
    classes: dict[tuple[int, int], list[int]] = {}
    for x in range(N_CELLS):
        classes.setdefault((parity(f1 & x), parity(f2 & x)), []).append(x)
    return sorted(classes.values())


def orthogonal(s1: StructureLike, s2: StructureLike) -> bool:
    """Graeco-Latin condition: every class of one partition meets every class of the other once."""
    if _line_of(s1) == _line_of(s2):
        raise ValueError("orthogonality is defined for distinct structures")
    return all(
        len(set(a) & set(b)) == 1 for a in four_partition(s1) for b in four_partition(s2)
    )


class OrthogonalityFailure(AssertionError):
    pass


@dataclass
class OrthogonalityReport:
    pairs: int
    orthogonal_pairs: int
    skew_pairs: int
    violations: list[tuple[str, str]]

    def to_dict(self) -> dict:
        return {
            "pairs": self.pairs,
            "orthogonal_pairs": self.orthogonal_pairs,
            "skew_pairs": self.skew_pairs,
            "violations": [list(v) for v in self.violations],
        }


def verify_orthogonality_skewness(structures: Iterable[StructureLike] | Mapping | None = None,
                                  strict: bool = True) -> OrthogonalityReport:
    if structures is None:
        structures = lines()
    keys = sorted({_line_of(s) for s in structures})
    n_orth = n_skew = 0
    violations = []
    for a, b in combinations(keys, 2):
        o, k = orthogonal(a, b), skew(a, b)
        n_orth += o
        n_skew += k
        if o != k:
            violations.append((a.label, b.label))
    report = OrthogonalityReport(len(keys) * (len(keys) - 1) // 2, n_orth, n_skew, violations)
    if strict and violations:
        raise OrthogonalityFailure(f"orthogonality and skewness disagree on {violations[:5]}")
    return report


def transform_line(line: ProjLine, columns: tuple[int, ...]) -> ProjLine:
    """Image of a line of functionals under ``f -> f o M^-1``, ``M`` given by its column images."""
    # f o M^-1 is the unique functional h with h(M e_j) = f(e_j) for each basis vector e_j
    basis = [1 << (3 - j) for j in range(4)]
    image = []
    for f in line.points:
        target = [parity(f & e) for e in basis]
        h = next(h for h in range(1, 16) if all(parity(h & m) == t for m, t in zip(columns, target)))
        image.append(h)
    return ProjLine(tuple(image))
