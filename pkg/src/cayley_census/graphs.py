"""Cayley digraphs, their automorphism groups, and DRR/GRR/normality tests.

The automorphism group is found by individualization-refinement: vertices
are coloured by (in-degree, out-degree) counts towards every colour class,
iterated to a fixed point.  For each base point the orbit under the point
stabilizer is completed by searching for a single automorphism per new
orbit point, so the product of orbit sizes is the group order.  The result
is handed to :class:`~cayley_census.perms.PermGroup`, whose Schreier-Sims
order must agree.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .automorphisms import AutomorphismList
from .errors import GroupTooLarge, InternalCheckFailed, NotASubgroup, OrderTooLarge
from .groups import ElementSubset, Group
from .perms import PermGroup, conjugate, is_identity, mul
from .subsets import is_inverse_closed, stabilizes

GRAPH_MAX_VERTICES = 32
ORACLE_MAX_VERTICES = 8
NORMALIZER_ENUMERATION_LIMIT = 10**6


@dataclass(frozen=True, eq=False)
class CayleyGraph:
    adj: np.ndarray
    connection_set: ElementSubset | None = None
    undirected: bool = False

    @property
    def n(self) -> int:
        return int(self.adj.shape[0])

    @property
    def rows(self) -> list[int]:
        """Out-neighbourhoods as bitmasks."""
        weights = 1 << np.arange(self.n, dtype=object)
        return [int((weights * r).sum()) for r in self.adj.astype(object)]

    def arcs(self) -> list[tuple[int, int]]:
        return [(int(u), int(v)) for u, v in np.argwhere(self.adj)]

    def is_automorphism(self, perm) -> bool:
        p = np.asarray(perm)
        return bool(np.array_equal(self.adj[np.ix_(p, p)], self.adj))

    def to_edge_list(self) -> str:
        lines = [f"digraph n={self.n}"]
        lines += [f"{u} {v}" for u, v in self.arcs()]
        return "\n".join(lines) + "\n"


def build_cayley(G: Group, S: ElementSubset) -> CayleyGraph:
    """Arc ``(g, h)`` iff ``h g^-1`` lies in ``S``, i.e. ``h = s g``."""
    n = G.order
    adj = np.zeros((n, n), dtype=bool)
    members = S.elements()
    if members:
        g = np.arange(n)
        adj[np.repeat(g, len(members)), G.mul[np.array(members)[None, :], g[:, None]].ravel()] = True
    adj.setflags(write=False)
    return CayleyGraph(adj, S, bool(np.array_equal(adj, adj.T)))


def parse_edge_list(text: str) -> CayleyGraph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines or not lines[0].startswith("digraph n="):
        raise ValueError("edge list must start with 'digraph n=<order>'")
    n = int(lines[0].split("=", 1)[1])
    adj = np.zeros((n, n), dtype=bool)
    for ln in lines[1:]:
        u, v = (int(t) for t in ln.split())
        adj[u, v] = True
    return CayleyGraph(adj, None, bool(np.array_equal(adj, adj.T)))


def right_regular_embedding(G: Group) -> PermGroup:
    """The permutations ``g -> g a``, one per element ``a``."""
    perms = [tuple(int(v) for v in G.mul[:, a]) for a in range(G.order)]
    H = PermGroup(G.order, perms)
    if H.order != G.order:
        raise InternalCheckFailed(f"right regular representation has order {H.order}, expected {G.order}")
    return H


# refinement -------------------------------------------------------------------


def _refine(adj_f: np.ndarray, adj_t: np.ndarray, colors: np.ndarray):
    """Equitable refinement; returns canonical colours and a comparable trace."""
    n = len(colors)
    trace = []
    k = int(colors.max()) + 1 if n else 0
    while True:
        onehot = np.zeros((n, k), dtype=np.int64)
        onehot[np.arange(n), colors] = 1
        sig = np.concatenate([colors[:, None], adj_f @ onehot, adj_t @ onehot], axis=1)
        uniq, new = np.unique(sig, axis=0, return_inverse=True)
        new = new.reshape(-1)
        trace.append(uniq.tobytes())
        trace.append(np.bincount(new).tobytes())
        if len(uniq) == k:
            return new, b"|".join(trace)
        colors, k = new, len(uniq)


def _individualized(base_colors: np.ndarray, seq) -> np.ndarray:
    colors = base_colors.copy()
    top = int(base_colors.max()) + 1 if len(colors) else 0
    for i, v in enumerate(seq):
        colors[v] = top + i
    return colors


class _Search:
    def __init__(self, graph: CayleyGraph):
        self.graph = graph
        self.adj = graph.adj
        self.adj_f = graph.adj.astype(np.int64)
        self.adj_t = self.adj_f.T.copy()
        self.loops = np.diag(graph.adj).astype(np.int64)
        self.nodes = 0

    def refine(self, seq):
        return _refine(self.adj_f, self.adj_t, _individualized(self.loops, seq))

    def extend(self, src: list, tgt: list):
        """An automorphism mapping ``src[i] -> tgt[i]``, or None."""
        self.nodes += 1
        P, trace_p = self.refine(src)
        Q, trace_q = self.refine(tgt)
        if trace_p != trace_q:
            return None
        n = len(P)
        sizes = np.bincount(P)
        if sizes.max() == 1:
            perm = np.empty(n, dtype=np.int64)
            where_q = np.empty(n, dtype=np.int64)
            where_q[Q] = np.arange(n)
            perm[:] = where_q[P]
            return tuple(int(v) for v in perm) if self.graph.is_automorphism(perm) else None
        cells = [c for c in range(len(sizes)) if sizes[c] > 1]
        cell = min(cells, key=lambda c: (sizes[c], c))
        u = int(np.flatnonzero(P == cell)[0])
        for w in np.flatnonzero(Q == cell):
            found = self.extend(src + [u], tgt + [int(w)])
            if found is not None:
                return found
        return None


def _orbit(point: int, gens) -> set[int]:
    orbit = {point}
    stack = [point]
    while stack:
        p = stack.pop()
        for g in gens:
            q = g[p]
            if q not in orbit:
                orbit.add(q)
                stack.append(q)
    return orbit


def _is_trivial_shape(adj: np.ndarray) -> bool:
    n = adj.shape[0]
    off = adj[~np.eye(n, dtype=bool)]
    diag = np.diag(adj)
    return (off.all() or not off.any()) and (diag.all() or not diag.any())


@dataclass(frozen=True)
class AutomorphismSearch:
    group: PermGroup
    base: tuple[int, ...]
    orbit_sizes: tuple[int, ...]
    nodes: int


def automorphism_search(graph: CayleyGraph, *, max_vertices: int = GRAPH_MAX_VERTICES) -> AutomorphismSearch:
    n = graph.n
    if n > max_vertices:
        raise OrderTooLarge(f"graph has {n} vertices, search bound is {max_vertices}")
    if _is_trivial_shape(graph.adj):
        G = PermGroup.symmetric(n)
        return AutomorphismSearch(G, tuple(G.base), tuple(G.orbit_sizes()), 0)
    search = _Search(graph)
    # base: individualize the first vertex of the smallest non-singleton cell until discrete
    base: list[int] = []
    cells = []
    while True:
        P, _ = search.refine(base)
        sizes = np.bincount(P)
        if sizes.max() == 1:
            break
        nonsingle = [c for c in range(len(sizes)) if sizes[c] > 1]
        cell = min(nonsingle, key=lambda c: (sizes[c], c))
        members = np.flatnonzero(P == cell).tolist()
        cells.append(members)
        base.append(members[0])
    gens: list[tuple[int, ...]] = []
    orbit_sizes = [0] * len(base)
    for level in range(len(base) - 1, -1, -1):
        b = base[level]
        prefix = base[:level]
        orbit = _orbit(b, gens)
        for v in cells[level]:
            if v in orbit:
                continue
            sigma = search.extend(prefix + [b], prefix + [v])
            if sigma is not None:
                gens.append(sigma)
                orbit = _orbit(b, gens)
        orbit_sizes[level] = len(orbit)
    group = PermGroup(n, gens)
    if group.order != math.prod(orbit_sizes):
        raise InternalCheckFailed(
            f"search orbit product {math.prod(orbit_sizes)} != Schreier-Sims order {group.order}")
    return AutomorphismSearch(group, tuple(base), tuple(orbit_sizes), search.nodes)


def automorphism_group(graph: CayleyGraph, *, max_vertices: int = GRAPH_MAX_VERTICES) -> PermGroup:
    return automorphism_search(graph, max_vertices=max_vertices).group


@lru_cache(maxsize=None)
def _all_permutations(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)


def brute_force_automorphism_order(graph: CayleyGraph, *, max_vertices: int = ORACLE_MAX_VERTICES) -> int:
    """Count permutations preserving the arc relation, trying all ``n!``."""
    n = graph.n
    if n > max_vertices:
        raise OrderTooLarge(f"factorial oracle is limited to {max_vertices} vertices")
    P = _all_permutations(n)
    A = graph.adj
    permuted = A[P[:, :, None], P[:, None, :]]
    return int((permuted == A).all(axis=(1, 2)).sum())


# classification ----------------------------------------------------------------


def aut_stabilizer_of_S(G: Group, S: ElementSubset, auts: AutomorphismList) -> int:
    """Number of group automorphisms mapping ``S`` onto itself."""
    mask = S.as_mask()
    A = auts.as_array()
    # phi(S) = S  <=>  membership of phi(s) matches membership of s
    return int((mask[A] == mask).all(axis=1).sum())


def is_normal_in(aut: PermGroup, regular: PermGroup) -> bool:
    if aut.degree != regular.degree:
        raise ValueError("degree mismatch")
    for r in regular.generators:
        if r not in aut:
            raise NotASubgroup("the regular representation is not contained in the automorphism group")
    return all(conjugate(r, s) in regular for s in aut.generators for r in regular.generators)


def normalizer_order(aut: PermGroup, regular: PermGroup, *,
                     limit: int = NORMALIZER_ENUMERATION_LIMIT) -> int:
    """``|N_aut(regular)|`` by testing every element of ``aut``."""
    for r in regular.generators:
        if r not in aut:
            raise NotASubgroup("the regular representation is not contained in the automorphism group")
    E = aut.elements_array(limit)
    Einv = np.argsort(E, axis=1)
    R = regular.elements_array(limit)
    members = {row.tobytes() for row in R}
    keep = np.ones(len(E), dtype=bool)
    for r in regular.generators:
        r = np.asarray(r)
        # s^-1 r s : i -> s[r[s^-1[i]]]
        C = np.take_along_axis(E, r[Einv], axis=1)
        keep &= np.fromiter((row.tobytes() in members for row in C), dtype=bool, count=len(C))
    return int(keep.sum())


@dataclass(frozen=True)
class ClassificationRecord:
    is_drr: bool
    is_grr: bool
    is_normal: bool
    has_first_obstruction: bool
    aut_order: int
    aut_R_S_order: int
    undirected: bool
    group_order: int

    def check(self) -> None:
        n = self.group_order
        if self.is_grr and not (self.undirected and self.aut_order == n):
            raise InternalCheckFailed("GRR record without undirected regular automorphism group")
        if (self.is_drr or self.is_grr) and not self.is_normal:
            raise InternalCheckFailed("regular representation is not normal in itself")
        if self.is_normal and self.aut_order != n and not self.has_first_obstruction:
            raise InternalCheckFailed("normal, non-regular Cayley graph without a stabilizing automorphism")
        if self.aut_order % n:
            raise InternalCheckFailed("automorphism group order not divisible by the vertex count")

    def as_dict(self) -> dict:
        return {
            "is_drr": self.is_drr,
            "is_grr": self.is_grr,
            "is_normal": self.is_normal,
            "has_first_obstruction": self.has_first_obstruction,
            "aut_order": self.aut_order,
            "aut_R_S_order": self.aut_R_S_order,
            "undirected": self.undirected,
        }


def classify(G: Group, S: ElementSubset, auts: AutomorphismList, *,
             regular: PermGroup | None = None,
             max_vertices: int = GRAPH_MAX_VERTICES) -> ClassificationRecord:
    """DRR / GRR / normal-Cayley / first-obstruction flags for ``Cay(G, S)``."""
    return classify_with_group(G, S, auts, regular=regular, max_vertices=max_vertices)[0]


def classify_with_group(G: Group, S: ElementSubset, auts: AutomorphismList, *,
                        regular: PermGroup | None = None,
                        max_vertices: int = GRAPH_MAX_VERTICES) -> tuple[ClassificationRecord, PermGroup]:
    graph = build_cayley(G, S)
    aut = automorphism_group(graph, max_vertices=max_vertices)
    if regular is None:
        regular = right_regular_embedding(G)
    order = aut.order
    is_drr = order == G.order
    stab = aut_stabilizer_of_S(G, S, auts)
    rec = ClassificationRecord(
        is_drr=is_drr,
        is_grr=is_drr and is_inverse_closed(G, S),
        is_normal=True if is_drr else is_normal_in(aut, regular),
        has_first_obstruction=stab > 1,
        aut_order=order,
        aut_R_S_order=stab,
        undirected=graph.undirected,
        group_order=G.order,
    )
    rec.check()
    return rec, aut


__all__ = [
    "CayleyGraph",
    "ClassificationRecord",
    "aut_stabilizer_of_S",
    "automorphism_group",
    "automorphism_search",
    "brute_force_automorphism_order",
    "build_cayley",
    "classify",
    "classify_with_group",
    "is_normal_in",
    "normalizer_order",
    "parse_edge_list",
    "right_regular_embedding",
    "stabilizes",
]
