import itertools
from itertools import islice

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cayley_census import (
    PermGroup,
    all_automorphisms,
    automorphism_group,
    brute_force_automorphism_order,
    build_cayley,
    classify,
    enumerate_inverse_closed,
    is_normal_in,
    make_abelian,
    make_cyclic,
    make_dihedral,
    normalizer_order,
    right_regular_embedding,
)
from cayley_census.catalog import catalog
from cayley_census.errors import OrderTooLarge
from cayley_census.graphs import automorphism_search, parse_edge_list


def _graph(G, elements):
    return build_cayley(G, G.subset(elements))


def _vf2_order(graph, limit):
    """Count automorphisms with networkx's VF2 matcher, stopping past ``limit``."""
    D = nx.DiGraph()
    D.add_nodes_from(range(graph.n))
    D.add_edges_from(graph.arcs())
    matches = nx.algorithms.isomorphism.DiGraphMatcher(D, D).isomorphisms_iter()
    return sum(1 for _ in islice(matches, limit + 1))


def test_arc_convention(C4):
    g = _graph(C4, [1])
    assert g.arcs() == [(0, 1), (1, 2), (2, 3), (3, 0)]
    assert not g.undirected


@pytest.mark.parametrize("G, S, order", [
    (make_cyclic(3), [1, 2], 6),
    (make_cyclic(4), [1, 3], 8),
    (make_cyclic(4), [1], 4),
    (make_abelian([2, 2]), [], 24),
    (make_cyclic(5), [1, 2, 3, 4], 120),
    (make_dihedral(3), [3, 4, 5], 72),
    (make_cyclic(6), [1, 5], 12),
])
def test_known_automorphism_orders(G, S, order):
    assert automorphism_group(_graph(G, S)).order == order


def test_right_regular_permutations_preserve_every_graph(S3):
    R = right_regular_embedding(S3)
    assert R.order == 6
    for S in enumerate_inverse_closed(S3):
        g = build_cayley(S3, S)
        assert all(g.is_automorphism(r) for r in R.elements())


def test_found_generators_are_graph_automorphisms(D4):
    for S in list(enumerate_inverse_closed(D4))[::7]:
        g = build_cayley(D4, S)
        assert all(g.is_automorphism(p) for p in automorphism_group(g).generators)


@pytest.mark.parametrize("entry", [e for e in catalog(6)], ids=lambda e: e.group_id)
def test_search_matches_factorial_oracle(entry):
    G = entry.build()
    for S in enumerate_inverse_closed(G):
        g = build_cayley(G, S)
        assert automorphism_group(g).order == brute_force_automorphism_order(g)


def test_directed_search_matches_factorial_oracle():
    G = make_cyclic(5)
    for bits in range(1 << 5):
        g = build_cayley(G, G.subset([x for x in range(5) if bits >> x & 1]))
        assert automorphism_group(g).order == brute_force_automorphism_order(g)


@pytest.mark.parametrize("gid", ["C12", "D6", "A4", "Dic(C6)", "C2xC6", "D3xC2"])
def test_search_matches_vf2_on_order_12(gid):
    entry = next(e for e in catalog(12) if e.group_id == gid)
    G = entry.build()
    rng = np.random.default_rng(7)
    sets = list(enumerate_inverse_closed(G))
    checked = 0
    for i in rng.permutation(len(sets)):
        g = build_cayley(G, sets[i])
        order = automorphism_group(g).order
        if order > 2000:
            continue
        assert order == _vf2_order(g, order)
        checked += 1
        if checked == 8:
            break
    assert checked == 8


def test_search_limits():
    big = make_cyclic(33)
    with pytest.raises(OrderTooLarge):
        automorphism_group(_graph(big, [1]))
    with pytest.raises(OrderTooLarge):
        brute_force_automorphism_order(_graph(make_cyclic(9), [1]))


def test_search_reports_base_and_orbits(C4):
    res = automorphism_search(_graph(C4, [1, 3]))
    assert np.prod(res.orbit_sizes) == res.group.order == 8
    assert len(res.base) == len(res.orbit_sizes) >= 1


def test_normality_examples(C4, V4):
    for S, N in (([1, 3], 8), ([1], 4), ([], 24)):
        G = V4 if N == 24 else C4
        aut = automorphism_group(_graph(G, S))
        assert normalizer_order(aut, right_regular_embedding(G)) == N


def test_empty_graph_on_c4_is_not_normal(C4):
    aut = automorphism_group(_graph(C4, []))
    assert not is_normal_in(aut, right_regular_embedding(C4))


@pytest.mark.parametrize("entry", [e for e in catalog(8)], ids=lambda e: e.group_id)
def test_normal_iff_normalizer_is_everything(entry):
    G = entry.build()
    R = right_regular_embedding(G)
    for S in enumerate_inverse_closed(G):
        aut = automorphism_group(build_cayley(G, S))
        assert is_normal_in(aut, R) == (normalizer_order(aut, R) == aut.order)


def test_normalizer_is_holomorph_part_by_brute_force(S3):
    # N(R) inside Aut(Gamma) equals R x| Aut(G, S) for a Cayley graph
    auts = all_automorphisms(S3)
    R = right_regular_embedding(S3)
    for S in enumerate_inverse_closed(S3):
        aut = automorphism_group(build_cayley(S3, S))
        stab = sum(1 for phi in auts if {phi(x) for x in S} == set(S))
        assert normalizer_order(aut, R) == 6 * stab


def test_edge_list_roundtrip(S3):
    g = _graph(S3, [1, 2, 3])
    text = g.to_edge_list()
    assert text.startswith("digraph n=6\n")
    h = parse_edge_list(text)
    assert np.array_equal(h.adj, g.adj)


def test_classification_flags(C4, S3):
    r = classify(C4, C4.subset([1]), all_automorphisms(C4))
    assert r.is_drr and not r.is_grr and r.is_normal and not r.has_first_obstruction
    r = classify(C4, C4.subset([1, 3]), all_automorphisms(C4))
    assert not r.is_drr and r.is_normal and r.has_first_obstruction and r.aut_order == 8
    r = classify(S3, S3.subset([]), all_automorphisms(S3))
    assert not r.is_normal and r.aut_order == 720


def test_c3_x_c3_has_no_grr():
    # abelian of exponent > 2: inversion stabilizes every inverse-closed set
    G = make_abelian([3, 3])
    auts = all_automorphisms(G)
    assert not any(classify(G, S, auts).is_grr for S in enumerate_inverse_closed(G))


def test_perm_group_symmetric_and_membership():
    S5 = PermGroup.symmetric(5)
    assert S5.order == 120
    assert (1, 0, 2, 3, 4) in S5
    C5 = PermGroup(5, [(1, 2, 3, 4, 0)])
    assert C5.order == 5 and (1, 0, 2, 3, 4) not in C5
    assert sorted(C5.elements()) == sorted(
        tuple((i + k) % 5 for i in range(5)) for k in range(5))


def test_schreier_sims_against_closure():
    gens = [(1, 2, 0, 3, 4, 5), (0, 1, 2, 4, 5, 3), (3, 4, 5, 0, 1, 2)]
    seen = {tuple(range(6))}
    frontier = list(seen)
    while frontier:
        p = frontier.pop()
        for g in gens:
            q = tuple(g[v] for v in p)
            if q not in seen:
                seen.add(q)
                frontier.append(q)
    G = PermGroup(6, gens)
    assert G.order == len(seen) == 18
    assert all(p in G for p in seen)
    assert sum(1 for p in itertools.permutations(range(6)) if p in G) == 18


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(catalog(8)), st.integers(0, 2 ** 8 - 1))
def test_random_digraphs_match_oracle(entry, bits):
    G = entry.build()
    g = _graph(G, [x for x in range(G.order) if bits >> x & 1])
    order = automorphism_group(g).order
    assert order == brute_force_automorphism_order(g)
    assert order % G.order == 0
