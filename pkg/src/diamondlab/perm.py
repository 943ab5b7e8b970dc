"""Permutations of the 16 cells and the group they generate.

A permutation is a tuple ``images`` with ``images[i]`` the destination of
cell ``i``.  Composition follows function notation: ``compose(g, h)``
applies ``h`` first, then ``g``.
"""

from __future__ import annotations

import os
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field

import numpy as np

from .tiles import N_CELLS, Pattern

Perm = tuple[int, ...]

DEFAULT_CAP = 10**7

AXES = ("rows", "cols", "quads")


class ClosureCapExceeded(RuntimeError):
    pass


def closure_cap() -> int:
    return int(os.environ.get("DIAMONDLAB_CAP", DEFAULT_CAP))


def check_perm(p: Sequence[int], degree: int | None = None) -> Perm:
    p = tuple(int(x) for x in p)
    n = len(p) if degree is None else degree
    if len(p) != n or sorted(p) != list(range(n)):
        raise ValueError(f"not a permutation of 0..{n - 1}: {p!r}")
    return p


def identity(degree: int = N_CELLS) -> Perm:
    return tuple(range(degree))


def compose(g: Perm, h: Perm) -> Perm:
    """``g o h``: apply ``h``, then ``g``."""
    return tuple(g[x] for x in h)


def inverse(g: Perm) -> Perm:
    inv = [0] * len(g)
    for i, x in enumerate(g):
        inv[x] = i
    return tuple(inv)


def axis_perm(axis: str, sigma: Sequence[int]) -> Perm:
    """Cell permutation moving whole rows, columns or 2x2 quadrants by ``sigma``."""
    sigma = tuple(sigma)
    if sorted(sigma) != [0, 1, 2, 3]:
        raise ValueError(f"sigma must be a permutation of 0..3, got {sigma!r}")
    images = []
    for i in range(N_CELLS):
        r, c = divmod(i, 4)
        if axis == "rows":
            r = sigma[r]
        elif axis == "cols":
            c = sigma[c]
        elif axis == "quads":
            q = sigma[2 * (r >> 1) + (c >> 1)]
            r, c = 2 * (q >> 1) + (r & 1), 2 * (q & 1) + (c & 1)
        else:
            raise ValueError(f"unknown axis {axis!r}; expected one of {AXES}")
        images.append(4 * r + c)
    return tuple(images)


def diamond_generators() -> list[Perm]:
    """Adjacent transpositions of rows, of columns and of quadrants."""
    gens = []
    for axis in AXES:
        for k in range(3):
            sigma = [0, 1, 2, 3]
            sigma[k], sigma[k + 1] = sigma[k + 1], sigma[k]
            gens.append(axis_perm(axis, sigma))
    return gens


def act(g: Perm, p: Pattern) -> Pattern:
    """Move tiles: the result holds at cell ``g[i]`` the tile ``p`` holds at ``i``."""
    out = [0] * N_CELLS
    for i, k in enumerate(p.digits):
        out[g[i]] = k
    return Pattern(tuple(out))


# --- explicit closure ---------------------------------------------------------

_SHIFTS = np.arange(4 * (N_CELLS - 1), -1, -4, dtype=np.uint64)


def pack(perms: np.ndarray) -> np.ndarray:
    """Pack rows of 16 images (values < 16) into uint64 keys, lexicographic order preserved."""
    return np.bitwise_or.reduce(perms.astype(np.uint64) << _SHIFTS, axis=1)


def unpack(keys: np.ndarray) -> np.ndarray:
    return ((keys[:, None] >> _SHIFTS) & np.uint64(15)).astype(np.uint8)


@dataclass(frozen=True)
class GroupSet:
    """An explicitly enumerated permutation group on 16 points."""

    elements: np.ndarray  # (n, 16) uint8, BFS discovery order, each layer sorted
    generators: tuple[Perm, ...]
    depth: int
    keys: np.ndarray = field(repr=False)  # sorted packed keys

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        key = pack(np.asarray(g, dtype=np.uint8)[None, :])[0]
        i = np.searchsorted(self.keys, key)
        return bool(i < len(self.keys) and self.keys[i] == key)

    def contains_many(self, perms: np.ndarray) -> np.ndarray:
        keys = pack(np.asarray(perms, dtype=np.uint8))
        i = np.minimum(np.searchsorted(self.keys, keys), len(self.keys) - 1)
        return self.keys[i] == keys

    def __iter__(self) -> Iterator[Perm]:
        return (tuple(int(x) for x in row) for row in self.elements)

    def sorted_elements(self) -> np.ndarray:
        return unpack(self.keys)

    def export_lines(self) -> str:
        """Newline-delimited image lists, sorted lexicographically."""
        return "".join(" ".join(map(str, row)) + "\n" for row in self.sorted_elements().tolist())


def generate_closure(gens: Iterable[Sequence[int]], cap: int | None = None) -> GroupSet:
    """Breadth-first closure of ``gens`` under composition."""
    gens = [check_perm(g, N_CELLS) for g in gens]
    if not gens:
        raise ValueError("need at least one generator")
    cap = closure_cap() if cap is None else cap
    gen_arrays = [np.asarray(g, dtype=np.uint8) for g in gens]

    frontier = np.arange(N_CELLS, dtype=np.uint8)[None, :]
    seen = pack(frontier)
    layers = [frontier]
    depth = 0
    while len(frontier):
        candidates = np.concatenate([g[frontier] for g in gen_arrays])
        keys = np.unique(pack(candidates))
        keys = keys[~np.isin(keys, seen, assume_unique=True)]
        if len(seen) + len(keys) > cap:
            raise ClosureCapExceeded(
                f"closure exceeds cap of {cap} elements at depth {depth + 1} "
                f"({len(seen) + len(keys)} found); raise DIAMONDLAB_CAP to continue"
            )
        if not len(keys):
            break
        depth += 1
        frontier = unpack(keys)
        layers.append(frontier)
        seen = np.union1d(seen, keys)
    return GroupSet(np.concatenate(layers), tuple(gens), depth, seen)


def orbit(seed: Pattern, gens: Iterable[Sequence[int]], cap: int | None = None) -> set[Pattern]:
    gens = [check_perm(g, N_CELLS) for g in gens]
    cap = closure_cap() if cap is None else cap
    seen = {seed}
    frontier = [seed]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = act(g, p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        if len(seen) > cap:
            raise ClosureCapExceeded(f"orbit exceeds cap of {cap} patterns")
        frontier = sorted(nxt)
    return seen


# --- affine maps --------------------------------------------------------------

@dataclass(frozen=True)
class AffineMap:
    """``x -> M x + t`` on GF(2)^4 with coordinates ordered (r1, r0, c1, c0)."""

    matrix: tuple[tuple[int, ...], ...]
    translation: tuple[int, int, int, int]

    def __call__(self, x: int) -> int:
        v = _bits(x)
        out = [
            (sum(m * xi for m, xi in zip(row, v)) + t) % 2
            for row, t in zip(self.matrix, self.translation)
        ]
        return _int(out)

    @property
    def columns(self) -> tuple[int, ...]:
        """Images of the basis vectors under the linear part, as cell indices."""
        return tuple(_int([row[j] for row in self.matrix]) for j in range(4))


def _bits(x: int) -> tuple[int, int, int, int]:
    return (x >> 3 & 1, x >> 2 & 1, x >> 1 & 1, x & 1)


def _int(v: Sequence[int]) -> int:
    return v[0] << 3 | v[1] << 2 | v[2] << 1 | v[3]


def as_affine(g: Sequence[int]) -> AffineMap | None:
    """Return the affine map agreeing with ``g`` on all 16 cells, or None."""
    t = g[0]
    cols = [g[1 << (3 - j)] ^ t for j in range(4)]
    for x in range(N_CELLS):
        y = t
        for j in range(4):
            if x >> (3 - j) & 1:
                y ^= cols[j]
        if g[x] != y:
            return None
    matrix = tuple(tuple(cols[j] >> (3 - i) & 1 for j in range(4)) for i in range(4))
    return AffineMap(matrix, _bits(t))


def affine_mask(perms: np.ndarray) -> np.ndarray:
    """Vectorised :func:`as_affine` test over rows of an ``(n, 16)`` array."""
    perms = np.asarray(perms, dtype=np.uint8)
    t = perms[:, 0]
    predicted = np.repeat(t[:, None], N_CELLS, axis=1)
    for j in range(4):
        col = perms[:, 1 << (3 - j)] ^ t
        has_bit = ((np.arange(N_CELLS) >> (3 - j)) & 1).astype(bool)
        predicted[:, has_bit] ^= col[:, None]
    return np.all(predicted == perms, axis=1)


def affine_group_order(n: int) -> int:
    """``|AGL(n, 2)| = 2^n * prod_{i<n} (2^n - 2^i)``."""
    if n < 1:
        raise ValueError("dimension must be at least 1")
    order = 2**n
    for i in range(n):
        order *= 2**n - 2**i
    return order
