"""Deterministic Schreier-Sims for small-degree permutation groups.

Used for groups too large to list (M24) and as an independent check on
the explicit closure in :mod:`diamondlab.perm`.  Permutations are image
tuples; ``compose(g, h)`` applies ``h`` first.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

import numpy as np

from .perm import Perm, check_perm, compose, identity, inverse


@dataclass
class _Level:
    base_point: int
    gens: list[Perm]
    transversal: dict[int, Perm]  # point -> element carrying base_point there


def _orbit_transversal(point: int, gens: Sequence[Perm], degree: int) -> dict[int, Perm]:
    trans = {point: identity(degree)}
    queue = [point]
    for gamma in queue:
        u = trans[gamma]
        for g in gens:
            delta = g[gamma]
            if delta not in trans:
                trans[delta] = compose(g, u)
                queue.append(delta)
    return trans


class StabilizerChain:
    """Base and strong generating set with order, membership and stabilizer queries."""

    def __init__(self, gens: Iterable[Sequence[int]], degree: int, base: Sequence[int] = ()):
        self.degree = degree
        self.generators = [check_perm(g, degree) for g in gens]
        self.generators = [g for g in self.generators if g != identity(degree)]
        self.levels: list[_Level] = []
        for b in base:
            self._add_level(b)
        self._build()

    # -- construction ---------------------------------------------------------

    def _add_level(self, point: int) -> None:
        self.levels.append(_Level(point, [], {point: identity(self.degree)}))

    def _refresh(self, i: int) -> None:
        lvl = self.levels[i]
        lvl.transversal = _orbit_transversal(lvl.base_point, lvl.gens, self.degree)

    def _first_moved(self, g: Perm) -> int:
        used = {lvl.base_point for lvl in self.levels}
        return next(x for x in range(self.degree) if g[x] != x and x not in used)

    def _build(self) -> None:
        for g in self.generators:
            if all(g[lvl.base_point] == lvl.base_point for lvl in self.levels):
                self._add_level(self._first_moved(g))
        if not self.levels:
            return
        self.levels[0].gens = list(self.generators)
        for i in range(1, len(self.levels)):
            fixed = [lvl.base_point for lvl in self.levels[:i]]
            self.levels[i].gens = [g for g in self.generators if all(g[b] == b for b in fixed)]
        for i in range(len(self.levels)):
            self._refresh(i)

        i = len(self.levels) - 1
        while i >= 0:
            i = self._check_level(i)

    def _check_level(self, i: int) -> int:
        """Test all Schreier generators at level ``i``; return the next level to examine."""
        lvl = self.levels[i]
        for gamma in sorted(lvl.transversal):
            u1 = lvl.transversal[gamma]
            for g in lvl.gens:
                u2 = lvl.transversal[g[gamma]]
                schreier = compose(inverse(u2), compose(g, u1))
                h, j = self._sift(schreier, i + 1)
                if j < len(self.levels) or h != identity(self.degree):
                    if j == len(self.levels):
                        self._add_level(self._first_moved(h))
                    for level in range(i + 1, j + 1):
                        self.levels[level].gens.append(h)
                        self._refresh(level)
                    return j
        return i - 1

    def _sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for j in range(start, len(self.levels)):
            lvl = self.levels[j]
            beta = g[lvl.base_point]
            u = lvl.transversal.get(beta)
            if u is None:
                return g, j
            g = compose(inverse(u), g)
        return g, len(self.levels)

    # -- queries ----------------------------------------------------------------

    @property
    def base(self) -> list[int]:
        return [lvl.base_point for lvl in self.levels]

    @property
    def transversals(self) -> list[dict[int, Perm]]:
        return [lvl.transversal for lvl in self.levels]

    @property
    def strong_generators(self) -> list[list[Perm]]:
        return [list(lvl.gens) for lvl in self.levels]

    def order(self) -> int:
        n = 1
        for lvl in self.levels:
            n *= len(lvl.transversal)
        return n

    def contains(self, g: Sequence[int]) -> bool:
        g = tuple(g)
        if len(g) != self.degree or sorted(g) != list(range(self.degree)):
            return False
        h, j = self._sift(g)
        return j == len(self.levels) and h == identity(self.degree)

    __contains__ = contains

    def point_stabilizer(self, point: int) -> "StabilizerChain":
        """Chain for the subgroup fixing ``point``."""
        if self.levels and self.levels[0].base_point == point:
            gens = self.levels[1].gens if len(self.levels) > 1 else []
            return StabilizerChain(gens, self.degree, self.base[1:])
        full = StabilizerChain(self._all_strong(), self.degree, [point])
        return full.point_stabilizer(point)

    def _all_strong(self) -> list[Perm]:
        seen: dict[Perm, None] = {}
        for lvl in self.levels:
            for g in lvl.gens:
                seen.setdefault(g, None)
        return list(seen) or list(self.generators)

    def extended(self, g: Sequence[int]) -> "StabilizerChain":
        """Chain for the group generated by this one and ``g``."""
        return StabilizerChain(self._all_strong() + [tuple(g)], self.degree, self.base)

    def elements(self) -> np.ndarray:
        """All group elements as an ``(order, degree)`` uint8 array.

        Every element is uniquely ``u_0 u_1 ... u_k`` with ``u_i`` from the
        i-th transversal.
        """
        acc = np.arange(self.degree, dtype=np.uint8)[None, :]
        for lvl in reversed(self.levels):
            reps = [np.asarray(lvl.transversal[p], dtype=np.uint8) for p in sorted(lvl.transversal)]
            acc = np.concatenate([u[acc] for u in reps])
        return acc

    def __iter__(self) -> Iterator[Perm]:
        return (tuple(int(x) for x in row) for row in self.elements())

    def random_element(self, rng) -> Perm:
        g = identity(self.degree)
        for lvl in self.levels:
            pts = sorted(lvl.transversal)
            g = compose(g, lvl.transversal[pts[rng.randrange(len(pts))]])
        return g


def schreier_sims(gens: Iterable[Sequence[int]], degree: int, base: Sequence[int] = ()) -> StabilizerChain:
    return StabilizerChain(gens, degree, base)
