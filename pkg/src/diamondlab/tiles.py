"""Tiles, 4x4 patterns, cell coordinates and the GF(4) value coding.

A tile is a square split by one diagonal into a dark and a light triangle.
It is encoded by two bits:

* ``d`` -- split direction, 0 for ``\\`` (top-left to bottom-right) and
  1 for ``/`` (top-right to bottom-left);
* ``s`` -- shade, 1 when the triangle containing the bottom edge is dark.

Cells are indexed row-major, ``i = 4 * r + c``.  Writing ``r = 2 r1 + r0``
and ``c = 2 c1 + c0``, the cell index read as a 4-bit integer is exactly
the coordinate vector ``(r1, r0, c1, c0)`` over GF(2), most significant
bit first, so throughout the package a cell index *is* its vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

N_CELLS = 16
SIDE = 4

#: Names of the three component maps: the shade bit, the direction bit and their sum.
COMPONENTS = ("S", "D", "SD")


class PatternParseError(ValueError):
    """Raised when a pattern string is malformed; ``index`` is the offending position."""

    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


class TileType(NamedTuple):
    d: int
    s: int

    @property
    def digit(self) -> int:
        return 2 * self.d + self.s

    @classmethod
    def from_digit(cls, digit: int) -> "TileType":
        if digit not in (0, 1, 2, 3):
            raise ValueError(f"tile digit must be 0..3, got {digit!r}")
        return cls(digit >> 1, digit & 1)

    def interchange(self) -> "TileType":
        return TileType(self.d, self.s ^ 1)


TILE_TYPES = tuple(TileType.from_digit(k) for k in range(4))


class CellCoord(NamedTuple):
    r: int
    c: int

    @property
    def index(self) -> int:
        return SIDE * self.r + self.c

    @property
    def vec(self) -> tuple[int, int, int, int]:
        return (self.r >> 1, self.r & 1, self.c >> 1, self.c & 1)

    @classmethod
    def from_index(cls, i: int) -> "CellCoord":
        return cls(*divmod(i, SIDE))

    @classmethod
    def from_vec(cls, vec: Sequence[int]) -> "CellCoord":
        r1, r0, c1, c0 = vec
        return cls(2 * r1 + r0, 2 * c1 + c0)


def cell_index(r: int, c: int) -> int:
    return SIDE * r + c


@dataclass(frozen=True, order=True)
class Pattern:
    """A 4x4 array of tiles, stored row-major as tile digits ``2d + s``."""

    digits: tuple[int, ...]

    def __post_init__(self):
        if len(self.digits) != N_CELLS or any(k not in (0, 1, 2, 3) for k in self.digits):
            raise ValueError(f"invalid pattern digits {self.digits!r}")

    @classmethod
    def from_tiles(cls, tiles: Sequence[TileType]) -> "Pattern":
        return cls(tuple(t.digit for t in tiles))

    @classmethod
    def from_bits(cls, s_grid: int, d_grid: int) -> "Pattern":
        """Build a pattern from its shade and direction bit grids (bit i = cell i)."""
        return cls(tuple(2 * (d_grid >> i & 1) + (s_grid >> i & 1) for i in range(N_CELLS)))

    @classmethod
    def constant(cls, tile: TileType | int) -> "Pattern":
        digit = tile.digit if isinstance(tile, TileType) else tile
        return cls((digit,) * N_CELLS)

    def __getitem__(self, i: int) -> TileType:
        return TILE_TYPES[self.digits[i]]

    def __iter__(self) -> Iterator[TileType]:
        return (TILE_TYPES[k] for k in self.digits)

    def __str__(self) -> str:
        return encode(self)

    def tile_at(self, r: int, c: int) -> TileType:
        return self[cell_index(r, c)]

    def type_counts(self) -> tuple[int, int, int, int]:
        return tuple(self.digits.count(k) for k in range(4))

    def rows(self) -> list[str]:
        s = encode(self)
        return [s[4 * r:4 * r + 4] for r in range(SIDE)]


def encode(p: Pattern) -> str:
    return "".join(str(k) for k in p.digits)


def decode(text: str) -> Pattern:
    """Parse a 16-character row-major string over ``0123``."""
    if not isinstance(text, str):
        raise PatternParseError(f"pattern must be a string, got {type(text).__name__}", 0)
    for i, ch in enumerate(text[:N_CELLS]):
        if ch not in "0123":
            raise PatternParseError(f"invalid tile digit {ch!r} at index {i}", i)
    if len(text) != N_CELLS:
        index = min(len(text), N_CELLS)
        raise PatternParseError(f"pattern must have 16 characters, got {len(text)} (error at index {index})", index)
    return Pattern(tuple(int(ch) for ch in text))


def make_diamond_figure() -> Pattern:
    """The four-diamond figure: every quadrant shows a dark diamond about its center."""
    tiles = []
    for i in range(N_CELLS):
        r, c = divmod(i, SIDE)
        r0, c0 = r & 1, c & 1
        tiles.append(TileType(d=1 ^ r0 ^ c0, s=1 ^ r0))
    return Pattern.from_tiles(tiles)


# --- GF(4) -------------------------------------------------------------------
#
# Elements are ints 0..3: bit 0 is the coefficient of 1, bit 1 the
# coefficient of w, with w^2 = w + 1.  Names: 0, 1, w, w^2 = 3.

def _gf4_mul(a: int, b: int) -> int:
    # (a0 + a1 w)(b0 + b1 w) = a0b0 + (a0b1 + a1b0) w + a1b1 (w + 1)
    a0, a1, b0, b1 = a & 1, a >> 1, b & 1, b >> 1
    hi = a1 & b1
    return ((a0 & b0) ^ hi) | (((a0 & b1) ^ (a1 & b0) ^ hi) << 1)


GF4_MUL = tuple(tuple(_gf4_mul(a, b) for b in range(4)) for a in range(4))
GF4_INV = {a: next(b for b in range(1, 4) if GF4_MUL[a][b] == 1) for a in range(1, 4)}
GF4_NAMES = ("0", "1", "w", "w^2")


@dataclass(frozen=True, order=True)
class Gf4:
    value: int

    def __post_init__(self):
        if self.value not in (0, 1, 2, 3):
            raise ValueError(f"GF(4) element must be 0..3, got {self.value!r}")

    def __add__(self, other: "Gf4") -> "Gf4":
        return Gf4(self.value ^ other.value)

    __sub__ = __add__

    def __neg__(self) -> "Gf4":
        return self

    def __mul__(self, other: "Gf4") -> "Gf4":
        return Gf4(GF4_MUL[self.value][other.value])

    def inverse(self) -> "Gf4":
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse in GF(4)")
        return Gf4(GF4_INV[self.value])

    def __repr__(self) -> str:
        return f"Gf4({GF4_NAMES[self.value]})"


GF4_ZERO, GF4_ONE, GF4_OMEGA, GF4_OMEGA2 = (Gf4(k) for k in range(4))


def tile_to_gf4(t: TileType) -> Gf4:
    """``(d, s) -> s + d w``; colour interchange becomes ``+ 1``."""
    return Gf4(t.s | t.d << 1)


def gf4_to_tile(x: Gf4) -> TileType:
    return TileType(d=x.value >> 1, s=x.value & 1)


# --- component maps and edges ----------------------------------------------

def component_bit(t: TileType, component: str) -> int:
    if component == "S":
        return t.s
    if component == "D":
        return t.d
    if component == "SD":
        return t.s ^ t.d
    raise ValueError(f"unknown component {component!r}; expected one of {COMPONENTS}")


def component_map(p: Pattern, component: str) -> int:
    """The 16-bit grid (bit i = cell i) of one component bit across the pattern."""
    grid = 0
    for i, t in enumerate(p):
        grid |= component_bit(t, component) << i
    return grid


class EdgeColors(NamedTuple):
    top: int
    bottom: int
    left: int
    right: int


def tile_edge_colors(t: TileType) -> EdgeColors:
    # each edge lies inside one triangle; bottom is in the shade triangle
    return EdgeColors(top=t.s ^ 1, bottom=t.s, left=t.s ^ t.d, right=t.s ^ t.d ^ 1)
