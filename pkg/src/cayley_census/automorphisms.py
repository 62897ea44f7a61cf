"""Group automorphisms as image tables.

A map ``phi`` is stored as ``image`` with ``image[x] = x^phi``.  Maps act on
the right, so ``phi.then(psi)`` is "first ``phi``, then ``psi``".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import LengthMismatch, NotAnAutomorphism, OrderTooLarge, WitnessInvalid
from .groups import (
    ElementSubset,
    GeneralizedDicyclicWitness,
    Group,
    dicyclic_witness_over,
    index_two_subgroups,
    is_abelian_subset,
    subgroup_generated,
)

AUTOMORPHISM_MAX_ORDER = 64


@dataclass(frozen=True)
class GroupMap:
    image: tuple[int, ...]
    verified_automorphism: bool = False

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, x: int) -> int:
        return self.image[x]

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.image, dtype=np.int64)

    @property
    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.image))

    def then(self, other: "GroupMap") -> "GroupMap":
        return GroupMap(tuple(other.image[v] for v in self.image),
                        self.verified_automorphism and other.verified_automorphism)

    def inverse(self) -> "GroupMap":
        out = [0] * self.n
        for i, v in enumerate(self.image):
            out[v] = i
        return GroupMap(tuple(out), self.verified_automorphism)

    def power(self, k: int) -> "GroupMap":
        out = GroupMap(tuple(range(self.n)), self.verified_automorphism)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            out = out.then(base)
        return out

    def map_order(self) -> int:
        k, cur = 1, self
        while not cur.is_identity:
            cur = cur.then(self)
            k += 1
        return k

    def same_map(self, other: "GroupMap") -> bool:
        return self.image == other.image

    def apply_to_subset(self, S: ElementSubset) -> ElementSubset:
        return ElementSubset.from_elements(S.n, (self.image[s] for s in S))


def _is_homomorphism(G: Group, image: np.ndarray) -> bool:
    # phi(g h) == phi(g) phi(h) for all g, h
    return bool(np.array_equal(image[G.mul], G.mul[image[:, None], image[None, :]]))


def is_automorphism(G: Group, phi) -> bool:
    image = np.asarray(phi.image if isinstance(phi, GroupMap) else phi, dtype=np.int64)
    if image.shape != (G.order,):
        raise LengthMismatch(f"map has length {image.size}, group has order {G.order}")
    if sorted(image.tolist()) != list(range(G.order)):
        return False
    return _is_homomorphism(G, image)


def verified(G: Group, image: Sequence[int]) -> GroupMap:
    """Wrap ``image`` as a GroupMap, raising if it is not an automorphism."""
    if not is_automorphism(G, image):
        raise NotAnAutomorphism("map is not an automorphism")
    return GroupMap(tuple(int(v) for v in image), True)


def identity_map(G: Group) -> GroupMap:
    return GroupMap(tuple(range(G.order)), True)


def inversion_map(G: Group) -> GroupMap:
    """``x -> x^-1``; an automorphism exactly when ``G`` is abelian."""
    return GroupMap(tuple(int(v) for v in G.inv), G.is_abelian)


def inner_automorphism(G: Group, x: int) -> GroupMap:
    """``m -> x m x^-1`` (left conjugation)."""
    xi = int(G.inv[x])
    return GroupMap(tuple(int(v) for v in G.mul[G.mul[x, :], xi]), True)


def dicyclic_bar_iota(G: Group, w: GeneralizedDicyclicWitness) -> GroupMap:
    """Fix ``A`` pointwise and invert every element of the coset ``Ax``."""
    problem = w.validate(G)
    if problem is not None:
        raise WitnessInvalid(problem)
    image = np.where(w.A.as_mask(), np.arange(G.order), G.inv)
    if not _is_homomorphism(G, image):
        raise WitnessInvalid("the map fixing A and inverting Ax is not a homomorphism")
    return GroupMap(tuple(int(v) for v in image), True)


def fixed_points(G: Group, phi: GroupMap) -> ElementSubset:
    a = phi.array
    return G.subset(np.flatnonzero(a == np.arange(G.order)))


def inverted_points(G: Group, phi: GroupMap) -> ElementSubset:
    a = phi.array
    return G.subset(np.flatnonzero(a == G.inv))


# enumeration ----------------------------------------------------------------


def greedy_generators(G: Group) -> list[int]:
    """A generating set built by adding elements outside the current closure.

    Each step picks the element of largest order outside the closure, so the
    subgroup at least doubles and at most ``floor(log2 |G|)`` elements are used.
    """
    gens: list[int] = []
    closure = ElementSubset(G.order, 1)
    while len(closure) < G.order:
        outside = [g for g in range(G.order) if g not in closure]
        g = max(outside, key=lambda e: (int(G.elem_order[e]), -e))
        gens.append(g)
        closure = subgroup_generated(G, gens)
    return gens


def _extend_homomorphism(G: Group, gens: list[int], images: list[int]) -> dict[int, int] | None:
    """Extend ``gens[i] -> images[i]`` to ``<gens>``; None if inconsistent or not injective."""
    f = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            fx = f[x]
            for g, h in zip(gens, images):
                y = int(G.mul[x, g])
                fy = int(G.mul[fx, h])
                known = f.get(y)
                if known is None:
                    f[y] = fy
                    nxt.append(y)
                elif known != fy:
                    return None
        frontier = nxt
    if len(set(f.values())) != len(f):
        return None
    return f


@dataclass(frozen=True)
class AutomorphismList:
    group: Group
    maps: tuple[GroupMap, ...]
    generators: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.maps)

    def __iter__(self) -> Iterator[GroupMap]:
        return iter(self.maps)

    def __getitem__(self, i) -> GroupMap:
        return self.maps[i]

    def non_identity(self) -> list[tuple[int, GroupMap]]:
        return [(i, phi) for i, phi in enumerate(self.maps) if not phi.is_identity]

    def index_of(self, phi: GroupMap) -> int:
        for i, psi in enumerate(self.maps):
            if psi.image == phi.image:
                return i
        raise KeyError("map is not in the automorphism list")

    def as_array(self) -> np.ndarray:
        return np.array([m.image for m in self.maps], dtype=np.int64).reshape(len(self.maps), self.group.order)


def iter_automorphisms(G: Group) -> Iterator[GroupMap]:
    """Backtrack over images of a greedy generating set."""
    gens = greedy_generators(G)
    if not gens:
        yield identity_map(G)
        return
    by_order: dict[int, list[int]] = {}
    for e in range(G.order):
        by_order.setdefault(int(G.elem_order[e]), []).append(e)
    candidates = [by_order[int(G.elem_order[g])] for g in gens]

    def rec(level: int, images: list[int]):
        for h in candidates[level]:
            trial = images + [h]
            f = _extend_homomorphism(G, gens[: level + 1], trial)
            if f is None:
                continue
            if level + 1 == len(gens):
                image = tuple(f[x] for x in range(G.order))
                yield GroupMap(image, True)
            else:
                yield from rec(level + 1, trial)

    yield from rec(0, [])


def all_automorphisms(G: Group, *, max_order: int = AUTOMORPHISM_MAX_ORDER) -> AutomorphismList:
    if G.order > max_order:
        raise OrderTooLarge(f"automorphism enumeration is limited to order {max_order}")
    maps = sorted(iter_automorphisms(G), key=lambda m: m.image)
    return AutomorphismList(G, tuple(maps), tuple(greedy_generators(G)))


# generalized dicyclic recognition --------------------------------------------


def generalized_dicyclic_witnesses(G: Group, *, max_order: int = AUTOMORPHISM_MAX_ORDER):
    if G.order > max_order:
        raise OrderTooLarge(f"dicyclic recognition is limited to order {max_order}")
    out = []
    for A in index_two_subgroups(G):
        if not is_abelian_subset(G, A):
            continue
        w = dicyclic_witness_over(G, A)
        if w is not None:
            out.append(w)
    return out


def is_generalized_dicyclic(G: Group, *, all_witnesses: bool = False,
                            max_order: int = AUTOMORPHISM_MAX_ORDER):
    """First witness (or every witness with ``all_witnesses``); None/[] if there is none."""
    ws = generalized_dicyclic_witnesses(G, max_order=max_order)
    if all_witnesses:
        return ws
    return ws[0] if ws else None


# serialization ----------------------------------------------------------------


def format_maps(maps) -> str:
    return "".join(" ".join(str(v) for v in m.image) + "\n" for m in maps)


def parse_maps(text: str, G: Group | None = None) -> list[GroupMap]:
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        image = tuple(int(tok) for tok in line.split())
        if G is not None:
            out.append(verified(G, image))
        else:
            out.append(GroupMap(image))
    return out
