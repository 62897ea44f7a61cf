"""Inverse-closed connection sets and their invariance under automorphisms.

An inverse-closed set is a union of classes ``{x, x^-1}``; there are
``c(G)`` such classes, so the sets are in bijection with ``c``-bit choice
masks.  Orbit counts of ``H = <inversion, phi>`` are computed both by
union-find and by averaging fixed points over ``H``, and the two are
required to agree.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .automorphisms import (
    AutomorphismList,
    GroupMap,
    fixed_points,
    inversion_map,
    inverted_points,
    is_automorphism,
    is_generalized_dicyclic,
)
from .errors import (
    BudgetExceeded,
    GeneratorNotPermutation,
    HTooLarge,
    IdentityAutomorphism,
    InternalCheckFailed,
    NotAnAutomorphism,
)
from .groups import (
    ElementSubset,
    Group,
    c_param,
    dicyclic_witness_over,
    involution_set,
    is_abelian_subset,
)

ENUMERATION_BUDGET = 24
H_CAP = 64
CROSS_CHECK_BUDGET = 16


def is_inverse_closed(G: Group, S: ElementSubset) -> bool:
    return all(int(G.inv[s]) in S for s in S)


def inverse_pairs(G: Group) -> list[tuple[int, ...]]:
    """The classes ``{x}`` (for ``x*x = 1``) and ``{x, x^-1}``, ordered by least element."""
    seen = set()
    out = []
    for x in range(G.order):
        if x in seen:
            continue
        y = int(G.inv[x])
        cls = (x,) if y == x else (x, y)
        seen.update(cls)
        out.append(cls)
    return out


def _pair_masks(G: Group) -> list[int]:
    return [sum(1 << x for x in cls) for cls in inverse_pairs(G)]


def _check_budget(c: int, budget: int):
    if c > budget:
        raise BudgetExceeded(f"2^{c} inverse-closed sets exceed the enumeration budget 2^{budget}")


def enumerate_inverse_closed(G: Group, *, budget: int = ENUMERATION_BUDGET) -> Iterator[ElementSubset]:
    """Yield every inverse-closed subset once, indexed by its class-choice mask."""
    pairs = _pair_masks(G)
    _check_budget(len(pairs), budget)
    for choice in range(1 << len(pairs)):
        bits = 0
        j = 0
        while choice:
            if choice & 1:
                bits |= pairs[j]
            choice >>= 1
            j += 1
        yield ElementSubset(G.order, bits)


def inverse_closed_membership(G: Group, *, budget: int = ENUMERATION_BUDGET) -> np.ndarray:
    """Boolean matrix, one row per inverse-closed set, same order as the enumerator."""
    pairs = inverse_pairs(G)
    c = len(pairs)
    _check_budget(c, budget)
    choice = (np.arange(1 << c, dtype=np.int64)[:, None] >> np.arange(c)) & 1
    owner = np.empty(G.order, dtype=np.int64)
    for j, cls in enumerate(pairs):
        owner[list(cls)] = j
    return choice[:, owner].astype(bool)


def count_inverse_closed(G: Group) -> int:
    return 2 ** c_param(G)


# orbits ---------------------------------------------------------------------


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x != y:
            if y < x:
                x, y = y, x
            self.parent[y] = x


@dataclass(frozen=True)
class OrbitPartition:
    n: int
    orbit_id: tuple[int, ...]
    count: int
    generators: tuple[tuple[int, ...], ...]
    group_order: int
    fixed_point_total: int

    def orbits(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x, k in enumerate(self.orbit_id):
            out.setdefault(k, []).append(x)
        return [out[k] for k in sorted(out)]


def _as_perm(n: int, g) -> tuple[int, ...]:
    image = tuple(int(v) for v in (g.image if isinstance(g, GroupMap) else g))
    if len(image) != n or sorted(image) != list(range(n)):
        raise GeneratorNotPermutation(f"{image} is not a permutation of 0..{n - 1}")
    return image


def permutation_closure(n: int, gens: Sequence[tuple[int, ...]], cap: int = H_CAP) -> list[tuple[int, ...]]:
    ident = tuple(range(n))
    elems = [ident]
    seen = {ident}
    i = 0
    while i < len(elems):
        p = elems[i]
        for g in gens:
            q = tuple(g[v] for v in p)
            if q not in seen:
                seen.add(q)
                elems.append(q)
                if len(elems) > cap:
                    raise HTooLarge(f"generated permutation group exceeds {cap} elements")
        i += 1
    return elems


def orbit_count(G: Group | int, generators: Sequence, *, cap: int = H_CAP) -> OrbitPartition:
    """Orbits of the permutation group generated by ``generators``.

    The count from union-find is checked against the orbit-counting lemma
    over the full generated group.
    """
    n = G if isinstance(G, int) else G.order
    gens = [_as_perm(n, g) for g in generators]
    uf = _UnionFind(n)
    for g in gens:
        for x in range(n):
            uf.union(x, g[x])
    roots = [uf.find(x) for x in range(n)]
    relabel: dict[int, int] = {}
    ids = tuple(relabel.setdefault(r, len(relabel)) for r in roots)
    count = len(relabel)

    H = permutation_closure(n, gens, cap)
    fixed_total = sum(sum(1 for x in range(n) if h[x] == x) for h in H)
    burnside = Fraction(fixed_total, len(H))
    if burnside != count:
        raise InternalCheckFailed(f"union-find found {count} orbits, Burnside average is {burnside}")
    return OrbitPartition(n, ids, count, tuple(gens), len(H), fixed_total)


def _require_automorphism(G: Group, phi: GroupMap):
    if not phi.verified_automorphism and not is_automorphism(G, phi):
        raise NotAnAutomorphism("phi is not an automorphism of G")


def invariant_orbits(G: Group, phi: GroupMap, *, cap: int = H_CAP) -> OrbitPartition:
    """Orbits of ``<inversion, phi>`` on the elements of ``G``."""
    _require_automorphism(G, phi)
    return orbit_count(G, [inversion_map(G), phi], cap=cap)


def direct_invariant_count(G: Group, phi: GroupMap, *, budget: int = CROSS_CHECK_BUDGET) -> int:
    """Count phi-invariant inverse-closed sets by filtering the full enumeration."""
    M = inverse_closed_membership(G, budget=budget)
    inv_phi = np.argsort(phi.array)
    # y in phi(S)  <=>  phi^-1(y) in S
    return int((M[:, inv_phi] == M).all(axis=1).sum())


def count_phi_invariant_inverse_closed(G: Group, phi: GroupMap, *, cross_check: bool = True,
                                       budget: int = CROSS_CHECK_BUDGET) -> int:
    part = invariant_orbits(G, phi)
    count = 2 ** part.count
    if cross_check and c_param(G) <= budget:
        direct = direct_invariant_count(G, phi, budget=budget)
        if direct != count:
            raise InternalCheckFailed(f"2^o = {count} but direct filtering found {direct}")
    return count


# the trichotomy --------------------------------------------------------------


class Verdict(str, enum.Enum):
    BOUND_HOLDS = "BoundHolds"
    DICYCLIC_EXCEPTION = "DicyclicException"
    ABELIAN_EXCEPTION = "AbelianException"
    VIOLATION = "Violation"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class TrichotomyVerdict:
    case: Verdict
    orbit_count: int
    c: int
    bound_exponent: Fraction
    fixed_size: int
    inverted_size: int
    h_order: int

    @property
    def invariant_count(self) -> int:
        return 2 ** self.orbit_count

    @property
    def slack(self) -> Fraction:
        """``bound_exponent - orbit_count``; non-negative iff the bound holds."""
        return self.bound_exponent - self.orbit_count


def _exception_case(G: Group, phi: GroupMap, fixed: ElementSubset) -> Verdict | None:
    if G.is_abelian and G.exponent > 2 and phi.image == tuple(int(v) for v in G.inv):
        return Verdict.ABELIAN_EXCEPTION
    if 2 * len(fixed) == G.order and is_abelian_subset(G, fixed):
        w = dicyclic_witness_over(G, fixed)
        if w is not None:
            bar = np.where(fixed.as_mask(), np.arange(G.order), G.inv)
            if tuple(int(v) for v in bar) == phi.image:
                return Verdict.DICYCLIC_EXCEPTION
    return None


def lemma_trichotomy(G: Group, phi: GroupMap) -> TrichotomyVerdict:
    """Classify ``phi`` against the invariant-set bound ``2^(c - |G|/96)``.

    Exceptions are recognised structurally and take precedence over the
    numerical bound.
    """
    _require_automorphism(G, phi)
    if phi.is_identity:
        raise IdentityAutomorphism("the trichotomy needs a non-identity automorphism")
    part = invariant_orbits(G, phi)
    c = c_param(G)
    bound = c - Fraction(G.order, 96)
    fixed = fixed_points(G, phi)
    inverted = inverted_points(G, phi)
    case = _exception_case(G, phi, fixed)
    if case is None:
        case = Verdict.BOUND_HOLDS if part.count <= bound else Verdict.VIOLATION
    return TrichotomyVerdict(case, part.count, c, bound, len(fixed), len(inverted), part.group_order)


@dataclass(frozen=True)
class RefinedBound:
    index: int
    penalty: Fraction
    lhs: Fraction
    slack: Fraction | None
    exception: Verdict | None


def refined_bound_check(G: Group, phi: GroupMap) -> RefinedBound | None:
    """Slack of the fixed-subgroup inequality for index 2 (``|G|/32``) or 3 (``|G|/96``).

    Returns None when the index of the fixed subgroup is not 2 or 3; when
    ``phi`` is one of the exceptional maps the slack is None and the
    exception is recorded instead.
    """
    _require_automorphism(G, phi)
    if phi.is_identity:
        raise IdentityAutomorphism("refined bounds need a non-identity automorphism")
    n = G.order
    fixed = fixed_points(G, phi)
    index = n // len(fixed)
    if index not in (2, 3):
        return None
    penalty = Fraction(n, 32 if index == 2 else 96)
    lhs = Fraction(n + len(involution_set(G)) + len(fixed) + len(inverted_points(G, phi)), 4)
    exc = _exception_case(G, phi, fixed)
    if exc is not None:
        return RefinedBound(index, penalty, lhs, None, exc)
    return RefinedBound(index, penalty, lhs, c_param(G) - penalty - lhs, None)


# the obstruction set -----------------------------------------------------------


@dataclass(frozen=True)
class ObstructionCensus:
    count: int
    total: int
    closed_form_log2: float
    union_bound: int
    applicable: bool

    @property
    def closed_form_bound(self) -> float:
        return 2.0 ** self.closed_form_log2

    @property
    def vacuous(self) -> bool:
        """True when the closed-form bound is at least the number of all inverse-closed sets."""
        return self.closed_form_log2 >= math.log2(self.total)


def closed_form_log2_bound(G: Group) -> float:
    n = G.order
    return c_param(G) - n / 96 + math.log2(n) ** 2


def _orbit_constraint_pairs(G: Group, phi: GroupMap) -> list[tuple[int, int]]:
    """Pairs of inverse-pair class indices that an invariant set must treat alike."""
    pairs = inverse_pairs(G)
    owner = [0] * G.order
    for j, cls in enumerate(pairs):
        for x in cls:
            owner[x] = j
    return [(j, owner[phi.image[cls[0]]]) for j, cls in enumerate(pairs) if owner[phi.image[cls[0]]] != j]


def obstruction_census(G: Group, auts: AutomorphismList, *,
                       budget: int = ENUMERATION_BUDGET) -> ObstructionCensus:
    """Exact number of inverse-closed sets fixed setwise by some non-identity automorphism.

    Only one automorphism per cyclic subgroup of prime order is needed: a set
    fixed by ``phi`` is fixed by every power of ``phi``.
    """
    c = c_param(G)
    _check_budget(c, budget)
    reps = _prime_order_representatives(auts)
    choices = np.arange(1 << c, dtype=np.int64)
    hit = np.zeros(1 << c, dtype=bool)
    for phi in reps:
        ok = np.ones(1 << c, dtype=bool)
        for j, k in _orbit_constraint_pairs(G, phi):
            ok &= ((choices >> j) & 1) == ((choices >> k) & 1)
        hit |= ok
    union = 0
    for _, phi in auts.non_identity():
        union += 2 ** invariant_orbits(G, phi).count
    applicable = not ((G.is_abelian and G.exponent > 2) or is_generalized_dicyclic(G) is not None)
    return ObstructionCensus(int(hit.sum()), 2 ** c, closed_form_log2_bound(G), union, applicable)


def _prime_order_representatives(auts: AutomorphismList) -> list[GroupMap]:
    seen: set[tuple[int, ...]] = set()
    reps = []
    for _, phi in auts.non_identity():
        k = phi.map_order()
        p = next(q for q in range(2, k + 1) if k % q == 0)
        psi = phi.power(k // p)
        if psi.image in seen:
            continue
        reps.append(psi)
        cur = psi
        for _ in range(p - 1):
            seen.add(cur.image)
            cur = cur.then(psi)
    return reps


def stabilizes(phi: GroupMap, S: ElementSubset) -> bool:
    return phi.apply_to_subset(S) == S
