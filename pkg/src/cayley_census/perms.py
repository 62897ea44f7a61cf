"""Permutation groups with a deterministic Schreier-Sims stabilizer chain.

Permutations are tuples ``p`` with ``p[i]`` the image of ``i``; products act
left to right, ``mul(p, q)[i] = q[p[i]]``.  Base points are taken as the
smallest point moved by the first generator that needs a new level, which
keeps the chain on points ``0, 1, 2, ...`` for the groups met here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .errors import GroupTooLarge

Perm = tuple


def identity(n: int) -> Perm:
    return tuple(range(n))


def mul(p: Perm, q: Perm) -> Perm:
    return tuple(q[i] for i in p)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def is_identity(p: Perm) -> bool:
    return all(i == v for i, v in enumerate(p))


def conjugate(p: Perm, s: Perm) -> Perm:
    """``s^-1 p s``."""
    return mul(mul(inverse(s), p), s)


@dataclass
class _Level:
    base: int
    gens: list
    transversal: dict = field(default_factory=dict)

    def rebuild(self, n: int):
        self.transversal = {self.base: identity(n)}
        queue = [self.base]
        while queue:
            p = queue.pop()
            u = self.transversal[p]
            for s in self.gens:
                q = s[p]
                if q not in self.transversal:
                    self.transversal[q] = mul(u, s)
                    queue.append(q)


class PermGroup:
    """A permutation group of degree ``n`` with its stabilizer chain."""

    def __init__(self, degree: int, generators: Sequence[Sequence[int]], *, _levels=None):
        self.degree = degree
        gens = []
        for g in generators:
            g = tuple(int(v) for v in g)
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise ValueError(f"{g} is not a permutation of degree {degree}")
            if not is_identity(g) and g not in gens:
                gens.append(g)
        self.generators = tuple(gens)
        if _levels is not None:
            self._levels = _levels
        else:
            self._levels = []
            self._schreier_sims()

    @classmethod
    def symmetric(cls, n: int) -> "PermGroup":
        """Full symmetric group, chain written down directly (transpositions)."""
        gens = []
        if n >= 2:
            t = list(range(n))
            t[0], t[1] = 1, 0
            gens.append(tuple(t))
        if n >= 3:
            gens.append(tuple((i + 1) % n for i in range(n)))
        levels = []
        for b in range(n - 1):
            sg = []
            for j in range(b + 1, n):
                t = list(range(n))
                t[b], t[j] = j, b
                sg.append(tuple(t))
            lv = _Level(b, sg)
            lv.transversal = {b: identity(n)}
            for j, t in zip(range(b + 1, n), sg):
                lv.transversal[j] = t
            levels.append(lv)
        return cls(n, gens, _levels=levels)

    # chain ------------------------------------------------------------------

    @property
    def base(self) -> list[int]:
        return [lv.base for lv in self._levels]

    def orbit_sizes(self) -> list[int]:
        return [len(lv.transversal) for lv in self._levels]

    @property
    def order(self) -> int:
        return math.prod(self.orbit_sizes())

    def sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for i in range(start, len(self._levels)):
            lv = self._levels[i]
            beta = g[lv.base]
            u = lv.transversal.get(beta)
            if u is None:
                return g, i
            g = mul(g, inverse(u))
        return g, len(self._levels)

    def contains(self, g) -> bool:
        g = tuple(int(v) for v in g)
        if len(g) != self.degree:
            return False
        h, _ = self.sift(g)
        return is_identity(h)

    __contains__ = contains

    def _new_level(self, g: Perm) -> None:
        used = set(self.base)
        b = next(i for i in range(self.degree) if g[i] != i and i not in used)
        self._levels.append(_Level(b, []))

    def _schreier_sims(self) -> None:
        n = self.degree
        for g in self.generators:
            if all(g[b] == b for b in self.base):
                self._new_level(g)
        for k, lv in enumerate(self._levels):
            lv.gens = [g for g in self.generators if all(g[b] == b for b in self.base[:k])]
            lv.rebuild(n)
        i = len(self._levels) - 1
        while i >= 0:
            lv = self._levels[i]
            descend = False
            for p, u in list(lv.transversal.items()):
                for s in lv.gens:
                    us = mul(u, s)
                    schreier = mul(us, inverse(lv.transversal[us[lv.base]]))
                    h, j = self.sift(schreier, i + 1)
                    if is_identity(h):
                        continue
                    if j == len(self._levels):
                        self._new_level(h)
                    for ell in range(i + 1, j + 1):
                        self._levels[ell].gens.append(h)
                        self._levels[ell].rebuild(n)
                    i = j
                    descend = True
                    break
                if descend:
                    break
            if not descend:
                i -= 1

    # element traversal --------------------------------------------------------

    def elements_array(self, limit: int = 10**6) -> np.ndarray:
        """All elements as rows of an ``order x degree`` array."""
        if self.order > limit:
            raise GroupTooLarge(f"group of order {self.order} exceeds the enumeration limit {limit}")
        E = np.arange(self.degree, dtype=np.int64)[None, :]
        for lv in reversed(self._levels):
            U = np.array(list(lv.transversal.values()), dtype=np.int64)
            # rows: e then u  ->  u[e]
            E = U[:, E].reshape(-1, self.degree) if len(U) else E
        return E

    def elements(self, limit: int = 10**6) -> Iterator[Perm]:
        for row in self.elements_array(limit):
            yield tuple(int(v) for v in row)

    def __repr__(self):
        return f"<PermGroup degree={self.degree} order={self.order} gens={len(self.generators)}>"
