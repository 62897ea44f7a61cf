"""Finite groups stored as explicit multiplication tables.

Elements are the integers ``0..n-1`` and the identity is always element
``0``.  ``Group.mul[g, h]`` is the index of the product ``g*h``.  All the
structural helpers used by the rest of the package (involutions, centre,
subgroup closure, cores, index-2 subgroups) live here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    ExponentTooSmall,
    MissingInverse,
    NoIdentity,
    NotAbelian,
    NotAssociative,
    NotASubgroup,
    NotClosed,
    NotInvolution,
    OrderTooLarge,
)

MAX_ORDER = 512
EXHAUSTIVE_ASSOCIATIVITY_ORDER = 64
ASSOCIATIVITY_SEED = 20190101


@dataclass(frozen=True)
class ElementSubset:
    """A set of group elements stored as a bitmask over ``0..n-1``."""

    n: int
    bits: int = 0

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"bitmask {self.bits:#x} has members outside 0..{self.n - 1}")

    @classmethod
    def from_elements(cls, n: int, elements: Iterable[int]) -> "ElementSubset":
        bits = 0
        for x in elements:
            x = int(x)
            if not 0 <= x < n:
                raise ValueError(f"element {x} outside 0..{n - 1}")
            bits |= 1 << x
        return cls(n, bits)

    @classmethod
    def full(cls, n: int) -> "ElementSubset":
        return cls(n, (1 << n) - 1)

    def __contains__(self, x) -> bool:
        return 0 <= x < self.n and bool(self.bits >> x & 1)

    def __iter__(self) -> Iterator[int]:
        bits, x = self.bits, 0
        while bits:
            if bits & 1:
                yield x
            bits >>= 1
            x += 1

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def elements(self) -> list[int]:
        return list(self)

    def as_mask(self) -> np.ndarray:
        """Boolean membership vector of length ``n``."""
        out = np.zeros(self.n, dtype=bool)
        out[self.elements()] = True
        return out

    def __or__(self, other: "ElementSubset") -> "ElementSubset":
        return ElementSubset(self.n, self.bits | other.bits)

    def __and__(self, other: "ElementSubset") -> "ElementSubset":
        return ElementSubset(self.n, self.bits & other.bits)

    def __sub__(self, other: "ElementSubset") -> "ElementSubset":
        return ElementSubset(self.n, self.bits & ~other.bits)

    def issubset(self, other: "ElementSubset") -> bool:
        return self.bits & ~other.bits == 0

    def __repr__(self):
        return f"ElementSubset(n={self.n}, {self.elements()})"


@dataclass(frozen=True, eq=False)
class Group:
    """A validated finite group.

    Build instances with :func:`group_from_table` or one of the ``make_*``
    constructors rather than calling the class directly.
    """

    mul: np.ndarray
    inv: np.ndarray
    elem_order: np.ndarray
    name: str = ""
    identity: int = field(default=0, init=False)

    @property
    def order(self) -> int:
        return int(self.mul.shape[0])

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other):
        return isinstance(other, Group) and np.array_equal(self.mul, other.mul)

    def __hash__(self):
        return hash(self.mul.tobytes())

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<Group{label} of order {self.order}>"

    def m(self, *xs: int) -> int:
        """Product of the arguments, left to right."""
        out = 0
        for x in xs:
            out = int(self.mul[out, x])
        return out

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = int(self.inv[x]), -k
        out = 0
        for _ in range(k):
            out = int(self.mul[out, x])
        return out

    def subset(self, elements: Iterable[int]) -> ElementSubset:
        return ElementSubset.from_elements(self.order, elements)

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    @cached_property
    def exponent(self) -> int:
        e = 1
        for o in self.elem_order:
            e = e * int(o) // gcd(e, int(o))
        return e

    def table_rows(self) -> list[list[int]]:
        return self.mul.tolist()


# construction ---------------------------------------------------------------


def _element_orders(mul: np.ndarray) -> np.ndarray:
    n = mul.shape[0]
    orders = np.zeros(n, dtype=np.int64)
    for x in range(n):
        y, k = x, 1
        while y != 0:
            y = mul[y, x]
            k += 1
            if k > n:
                raise MissingInverse(f"element {x} has no finite order ending at the identity")
        orders[x] = k
    return orders


def _check_associative(mul: np.ndarray, exhaustive_limit: int) -> None:
    n = mul.shape[0]
    if n <= exhaustive_limit:
        lhs = mul[mul, :]          # lhs[x, y, z] = (xy)z
        rhs = mul[:, mul]          # rhs[x, y, z] = x(yz)
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            x, y, z = (int(v) for v in bad[0])
            raise NotAssociative(f"({x}*{y})*{z} != {x}*({y}*{z})")
        return
    rng = np.random.default_rng(ASSOCIATIVITY_SEED)
    triples = rng.integers(0, n, size=(10 * n * n, 3))
    x, y, z = triples.T
    bad = np.flatnonzero(mul[mul[x, y], z] != mul[x, mul[y, z]])
    if len(bad):
        i = bad[0]
        raise NotAssociative(f"({x[i]}*{y[i]})*{z[i]} != {x[i]}*({y[i]}*{z[i]})")


def group_from_table(
    table,
    name: str = "",
    *,
    max_order: int = MAX_ORDER,
    exhaustive_limit: int = EXHAUSTIVE_ASSOCIATIVITY_ORDER,
) -> Group:
    """Validate a Cayley table and wrap it as a :class:`Group`.

    The identity must be element 0.  Errors name the first offending
    element or triple.
    """
    try:
        mul = np.asarray(table, dtype=np.int64)
    except (ValueError, TypeError) as exc:
        raise NotClosed(f"table is not a square integer matrix ({exc})") from None
    if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
        raise NotClosed(f"table must be a non-empty square matrix, got shape {mul.shape}")
    n = mul.shape[0]
    if n > max_order:
        raise OrderTooLarge(f"order {n} exceeds the configured maximum {max_order}")
    out_of_range = np.argwhere((mul < 0) | (mul >= n))
    if len(out_of_range):
        g, h = (int(v) for v in out_of_range[0])
        raise NotClosed(f"{g}*{h} = {int(mul[g, h])} is not an element")
    ar = np.arange(n)
    if not (np.array_equal(mul[0], ar) and np.array_equal(mul[:, 0], ar)):
        ident = [e for e in range(n) if np.array_equal(mul[e], ar) and np.array_equal(mul[:, e], ar)]
        if ident:
            raise NoIdentity(f"identity is element {ident[0]}, but it must be element 0")
        raise NoIdentity("no two-sided identity element")
    inv = np.full(n, -1, dtype=np.int64)
    for x in range(n):
        hits = np.flatnonzero(mul[x] == 0)
        for y in hits:
            if mul[y, x] == 0:
                inv[x] = y
                break
        if inv[x] < 0:
            raise MissingInverse(f"element {x} has no inverse")
    _check_associative(mul, exhaustive_limit)
    mul.setflags(write=False)
    inv.setflags(write=False)
    orders = _element_orders(mul)
    orders.setflags(write=False)
    return Group(mul=mul, inv=inv, elem_order=orders, name=name)


def make_cyclic(n: int, *, max_order: int = MAX_ORDER) -> Group:
    if n < 1:
        raise ValueError("cyclic group needs n >= 1")
    if n > max_order:
        raise OrderTooLarge(f"order {n} exceeds the configured maximum {max_order}")
    ar = np.arange(n)
    return group_from_table((ar[:, None] + ar[None, :]) % n, name=f"C{n}", max_order=max_order)


def make_direct_product(G: Group, H: Group, *, name: str | None = None,
                        max_order: int = MAX_ORDER) -> Group:
    """Direct product; the pair ``(g, h)`` gets index ``g*|H| + h``."""
    n = G.order * H.order
    if n > max_order:
        raise OrderTooLarge(f"order {n} exceeds the configured maximum {max_order}")
    m = H.order
    idx = np.arange(n)
    g, h = idx // m, idx % m
    table = G.mul[g[:, None], g[None, :]] * m + H.mul[h[:, None], h[None, :]]
    if name is None:
        name = f"{G.name}x{H.name}" if G.name and H.name else ""
    return group_from_table(table, name=name, max_order=max_order)


def make_abelian(lengths: Sequence[int], *, max_order: int = MAX_ORDER) -> Group:
    """Direct product of cyclic groups, e.g. ``make_abelian([2, 4])``."""
    lengths = list(lengths)
    if not lengths:
        return make_cyclic(1)
    if any(k < 1 for k in lengths):
        raise ValueError("cycle lengths must be positive")
    n = int(np.prod(lengths))
    if n > max_order:
        raise OrderTooLarge(f"order {n} exceeds the configured maximum {max_order}")
    G = make_cyclic(lengths[0])
    for k in lengths[1:]:
        G = make_direct_product(G, make_cyclic(k), max_order=max_order)
    return group_from_table(G.mul, name="x".join(f"C{k}" for k in lengths), max_order=max_order)


def make_dihedral(m: int, *, max_order: int = MAX_ORDER) -> Group:
    """Dihedral group of order ``2m``: rotations ``0..m-1``, reflections ``m..2m-1``.

    Element ``k`` is ``r^k`` and element ``m + k`` is ``r^k s``.
    """
    if m < 1:
        raise ValueError("dihedral group needs m >= 1")
    if 2 * m > max_order:
        raise OrderTooLarge(f"order {2 * m} exceeds the configured maximum {max_order}")
    n = 2 * m
    idx = np.arange(n)
    k, s = idx % m, idx // m
    sign = 1 - 2 * s[:, None]
    rot = (k[:, None] + sign * k[None, :]) % m
    refl = (s[:, None] + s[None, :]) % 2
    return group_from_table(refl * m + rot, name=f"D{m}", max_order=max_order)


def make_permutation_group(generators: Sequence[Sequence[int]], name: str = "",
                           *, max_order: int = MAX_ORDER) -> Group:
    """Closure of some permutations, listed in breadth-first order from the identity."""
    gens = [tuple(int(v) for v in g) for g in generators]
    if not gens:
        return make_cyclic(1)
    deg = len(gens[0])
    ident = tuple(range(deg))
    elems = [ident]
    index = {ident: 0}
    i = 0
    while i < len(elems):
        p = elems[i]
        for g in gens:
            q = tuple(g[v] for v in p)
            if q not in index:
                index[q] = len(elems)
                elems.append(q)
                if len(elems) > max_order:
                    raise OrderTooLarge(f"generated group exceeds order {max_order}")
        i += 1
    P = np.array(elems)
    # p*q means apply p then q
    n = len(elems)
    table = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            table[a, b] = index[tuple(P[b][P[a]])]
    return group_from_table(table, name=name, max_order=max_order)


@dataclass(frozen=True)
class GeneralizedDicyclicWitness:
    """``A`` an abelian index-2 subgroup, ``y`` its chosen involution, ``x = x`` outside ``A``."""

    A: ElementSubset
    y: int
    x: int

    def validate(self, G: Group) -> str | None:
        """Return a description of the first failed condition, or ``None``."""
        A = self.A
        if A.n != G.order:
            return "subset belongs to a different group"
        if not is_subgroup(G, A):
            return "A is not a subgroup"
        if 2 * len(A) != G.order:
            return "A does not have index 2"
        elems = A.elements()
        sub = G.mul[np.ix_(elems, elems)]
        if not np.array_equal(sub, sub.T):
            return "A is not abelian"
        if len(A) % 2:
            return "A has odd order"
        if max(int(G.elem_order[a]) for a in elems) <= 2:
            return "A has exponent at most 2"
        if self.y not in A or G.elem_order[self.y] != 2:
            return "y is not an involution of A"
        if self.x in A:
            return "x lies in A"
        if G.mul[self.x, self.x] != self.y:
            return "x^2 != y"
        xi = int(G.inv[self.x])
        for a in elems:
            if G.m(self.x, a, xi) != G.inv[a]:
                return f"x does not invert element {a} of A"
        return None


def make_generalized_dicyclic(A: Group, y: int, *, max_order: int = MAX_ORDER):
    """Build ``Dic(A, y, x)`` together with its witness.

    Element ``a`` of ``A`` keeps index ``a``; the coset element ``a*x`` gets
    index ``|A| + a``.
    """
    if not A.is_abelian:
        raise NotAbelian(f"{A!r} is not abelian")
    if A.order % 2 or A.exponent <= 2:
        raise ExponentTooSmall("A must be an abelian group of even order and of exponent greater than 2")
    if not 0 <= y < A.order or A.elem_order[y] != 2:
        raise NotInvolution(f"element {y} is not an involution of A")
    m = A.order
    n = 2 * m
    if n > max_order:
        raise OrderTooLarge(f"order {n} exceeds the configured maximum {max_order}")
    idx = np.arange(n)
    a, i = idx % m, idx // m
    aa, bb = a[:, None], a[None, :]
    ii, jj = i[:, None], i[None, :]
    # (a x^i)(b x^j): x b = b^-1 x and x^2 = y
    b_eff = np.where(ii == 1, A.inv[bb], bb)
    prod = A.mul[aa, b_eff]
    prod = np.where((ii == 1) & (jj == 1), A.mul[prod, y], prod)
    table = prod + m * ((ii + jj) % 2)
    base = A.name or "A"
    G = group_from_table(table, name=f"Dic({base},y={y})", max_order=max_order)
    witness = GeneralizedDicyclicWitness(A=ElementSubset(n, (1 << m) - 1), y=int(y), x=m)
    return G, witness


# structure ------------------------------------------------------------------


def involution_set(G: Group) -> ElementSubset:
    """Elements with ``x*x = 1``, the identity included."""
    return G.subset(np.flatnonzero(G.elem_order <= 2))


def c_param(G: Group) -> int:
    """``(|R| + |I(R)|) / 2``, the number of inverse-pair classes of ``G``."""
    total = G.order + len(involution_set(G))
    assert total % 2 == 0
    return total // 2


def subgroup_generated(G: Group, seed: ElementSubset | Iterable[int]) -> ElementSubset:
    gens = list(seed)
    members = np.zeros(G.order, dtype=bool)
    members[0] = True
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                z = int(G.mul[x, g])
                if not members[z]:
                    members[z] = True
                    nxt.append(z)
        frontier = nxt
    return G.subset(np.flatnonzero(members))


def is_subgroup(G: Group, H: ElementSubset) -> bool:
    elems = H.elements()
    if 0 not in H:
        return False
    mask = H.as_mask()
    return bool(mask[G.mul[np.ix_(elems, elems)]].all())


def _require_subgroup(G: Group, H: ElementSubset) -> list[int]:
    if not is_subgroup(G, H):
        raise NotASubgroup(f"{H!r} is not a subgroup of {G!r}")
    return H.elements()


def conjugate_subset(G: Group, H: ElementSubset, g: int) -> ElementSubset:
    """``g H g^-1``."""
    gi = int(G.inv[g])
    return G.subset(G.mul[G.mul[g, H.elements()], gi])


def is_normal(G: Group, H: ElementSubset) -> bool:
    _require_subgroup(G, H)
    return all(conjugate_subset(G, H, g) == H for g in range(G.order))


def core(G: Group, H: ElementSubset) -> ElementSubset:
    """Largest normal subgroup of ``G`` inside ``H``."""
    _require_subgroup(G, H)
    out = H
    for g in range(G.order):
        out = out & conjugate_subset(G, H, g)
    return out


def center(G: Group) -> ElementSubset:
    return G.subset(np.flatnonzero((G.mul == G.mul.T).all(axis=1)))


def centralizer(G: Group, x: int) -> ElementSubset:
    return G.subset(np.flatnonzero(G.mul[x, :] == G.mul[:, x]))


def is_abelian(G: Group) -> bool:
    return G.is_abelian


def exponent(G: Group) -> int:
    return G.exponent


def is_abelian_subset(G: Group, H: ElementSubset) -> bool:
    elems = H.elements()
    sub = G.mul[np.ix_(elems, elems)]
    return bool(np.array_equal(sub, sub.T))


def index_two_subgroups(G: Group) -> list[ElementSubset]:
    """All subgroups of index 2, in increasing bitmask order.

    Every such subgroup contains all squares, so it is enough to search the
    subgroups lying over the subgroup generated by the squares.
    """
    if G.order % 2:
        return []
    squares = subgroup_generated(G, set(int(v) for v in np.diag(G.mul)))
    half = G.order // 2
    found: set[int] = set()
    seen: set[int] = {squares.bits}
    stack = [squares]
    while stack:
        H = stack.pop()
        if len(H) == half:
            found.add(H.bits)
            continue
        for g in range(G.order):
            if g in H:
                continue
            K = subgroup_generated(G, H.elements() + [g])
            if K.bits not in seen and len(K) <= half:
                seen.add(K.bits)
                stack.append(K)
    return [ElementSubset(G.order, b) for b in sorted(found)]


def dicyclic_witness_over(G: Group, A: ElementSubset) -> GeneralizedDicyclicWitness | None:
    """A witness that ``G`` is generalized dicyclic over ``A``, if one exists.

    Any ``x`` outside ``A`` works once one does, so only the smallest is tried.
    """
    if 2 * len(A) != G.order or not is_subgroup(G, A):
        return None
    x = next(g for g in range(G.order) if g not in A)
    w = GeneralizedDicyclicWitness(A=A, y=int(G.mul[x, x]), x=x)
    return w if w.validate(G) is None else None
