import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cayley_census import (
    GroupMap,
    all_automorphisms,
    dicyclic_bar_iota,
    fixed_points,
    inner_automorphism,
    inversion_map,
    inverted_points,
    is_automorphism,
    is_generalized_dicyclic,
    make_abelian,
    make_cyclic,
    make_dihedral,
    make_generalized_dicyclic,
)
from cayley_census.automorphisms import format_maps, parse_maps
from cayley_census.catalog import catalog
from cayley_census.errors import LengthMismatch, NotAnAutomorphism, OrderTooLarge, WitnessInvalid
from cayley_census.groups import GeneralizedDicyclicWitness

from conftest import brute_force_automorphisms

SMALL = [e for e in catalog(16)]
TINY = [e for e in catalog(7)]


@pytest.mark.parametrize("G, expected", [
    (make_cyclic(4), 2),
    (make_abelian([2, 2]), 6),
    (make_dihedral(3), 6),
    (make_generalized_dicyclic(make_cyclic(4), 2)[0], 24),
    (make_dihedral(4), 8),
    (make_abelian([2, 2, 2, 2]), 20160),
    (make_cyclic(1), 1),
    (make_cyclic(15), 8),
], ids=["C4", "C2xC2", "S3", "Q8", "D4", "C2^4", "C1", "C15"])
def test_automorphism_group_orders(G, expected):
    assert len(all_automorphisms(G)) == expected


@pytest.mark.parametrize("entry", TINY, ids=lambda e: e.group_id)
def test_enumeration_matches_factorial_scan(entry):
    G = entry.build()
    assert [m.image for m in all_automorphisms(G)] == sorted(brute_force_automorphisms(G))


def test_s3_automorphisms_are_inner(S3):
    inner = {inner_automorphism(S3, x).image for x in range(6)}
    assert inner == {m.image for m in all_automorphisms(S3)}


def test_cyclic_orders_match_euler_phi():
    for n in range(1, 25):
        phi = sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)
        assert len(all_automorphisms(make_cyclic(n))) == phi


def test_rejects_non_bijections_and_wrong_length(C4):
    assert not is_automorphism(C4, [0, 1, 1, 3])
    assert not is_automorphism(C4, [0, 2, 1, 3])
    with pytest.raises(LengthMismatch):
        is_automorphism(C4, [0, 1])


def test_inversion_is_automorphism_iff_abelian():
    for e in SMALL:
        G = e.build()
        assert is_automorphism(G, inversion_map(G)) == G.is_abelian
        assert inversion_map(G).verified_automorphism == G.is_abelian


def test_inner_automorphism_convention(S3):
    phi = inner_automorphism(S3, 1)
    for m in range(6):
        assert phi(m) == S3.m(1, m, int(S3.inv[1]))


def test_composition_applies_left_map_first(S3):
    a, b = inner_automorphism(S3, 1), inner_automorphism(S3, 3)
    ab = a.then(b)
    assert all(ab(x) == b(a(x)) for x in range(6))
    assert a.then(a.inverse()).is_identity


def test_map_order_and_power():
    auts = all_automorphisms(make_cyclic(7))
    for phi in auts:
        k = phi.map_order()
        assert phi.power(k).is_identity
        assert 6 % k == 0


def test_list_is_closed_and_contains_identity():
    for e in catalog(12):
        G = e.build()
        auts = all_automorphisms(G)
        images = {m.image for m in auts}
        assert tuple(range(G.order)) in images
        for a in auts:
            for b in list(auts)[:6]:
                assert a.then(b).image in images


def test_bound_by_generator_images():
    # a group of order n has a generating set of at most floor(log2 n) elements
    for e in SMALL:
        G = e.build()
        if G.order == 1:
            continue
        assert len(all_automorphisms(G)) <= G.order ** int(math.log2(G.order))


def test_order_cap():
    with pytest.raises(OrderTooLarge):
        all_automorphisms(make_cyclic(65))


def test_inversion_threshold_for_nonabelian_groups():
    for e in SMALL:
        G = e.build()
        if G.is_abelian:
            continue
        for _, phi in all_automorphisms(G).non_identity():
            assert 4 * len(inverted_points(G, phi)) <= 3 * G.order


def test_fixed_points_form_a_subgroup():
    from cayley_census.groups import is_subgroup
    for e in catalog(12):
        G = e.build()
        for phi in all_automorphisms(G):
            assert is_subgroup(G, fixed_points(G, phi))


def test_q8_bar_iota(Q8_with_witness):
    Q8, w = Q8_with_witness
    bar = dicyclic_bar_iota(Q8, w)
    assert is_automorphism(Q8, bar)
    assert fixed_points(Q8, bar) == w.A
    assert bar.then(bar).is_identity


def test_bar_iota_rejects_bad_witness(Q8_with_witness):
    Q8, w = Q8_with_witness
    bad = GeneralizedDicyclicWitness(Q8.subset([0, 2]), w.y, w.x)
    with pytest.raises(WitnessInvalid):
        dicyclic_bar_iota(Q8, bad)


def test_dicyclic_recognition():
    assert is_generalized_dicyclic(make_generalized_dicyclic(make_cyclic(6), 3)[0]) is not None
    assert is_generalized_dicyclic(make_dihedral(4)) is None
    assert is_generalized_dicyclic(make_cyclic(8)) is None
    assert is_generalized_dicyclic(make_abelian([2, 4])) is None
    # Q8 has three cyclic subgroups of index two, each one a witness
    Q8 = make_generalized_dicyclic(make_cyclic(4), 2)[0]
    assert len(is_generalized_dicyclic(Q8, all_witnesses=True)) == 3


def test_map_file_roundtrip(S3):
    auts = all_automorphisms(S3)
    again = parse_maps("# maps\n" + format_maps(auts), S3)
    assert [m.image for m in again] == [m.image for m in auts]
    with pytest.raises(NotAnAutomorphism):
        parse_maps("0 2 1 3 4 5\n", S3)


@st.composite
def group_and_automorphism(draw):
    e = draw(st.sampled_from(SMALL))
    G = e.build()
    auts = all_automorphisms(G)
    return G, auts[draw(st.integers(0, len(auts) - 1))]


@settings(max_examples=60, deadline=None)
@given(group_and_automorphism())
def test_automorphisms_commute_with_inversion(pair):
    G, phi = pair
    inv = inversion_map(G)
    assert phi.then(inv).image == inv.then(phi).image


@settings(max_examples=60, deadline=None)
@given(group_and_automorphism())
def test_automorphisms_preserve_element_orders(pair):
    G, phi = pair
    assert np.array_equal(G.elem_order[phi.array], G.elem_order)
