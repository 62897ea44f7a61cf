"""
Counting connection sets fixed by an automorphism
==================================================

An automorphism phi fixes ``2**o`` inverse-closed sets, where o is the number
of orbits of the group generated by inversion and phi.  Two families reach
the maximum ``2**c``.
"""

from cayley_census import (
    all_automorphisms,
    dicyclic_bar_iota,
    inner_automorphism,
    inversion_map,
    lemma_trichotomy,
    make_abelian,
    make_cyclic,
    make_dihedral,
    make_generalized_dicyclic,
    refined_bound_check,
)

C4 = make_cyclic(4)
v = lemma_trichotomy(C4, inversion_map(C4))
print("C4, inversion:", v.case, "orbits", v.orbit_count, "of c =", v.c)

Q8, w = make_generalized_dicyclic(make_cyclic(4), 2)
v = lemma_trichotomy(Q8, dicyclic_bar_iota(Q8, w))
print("Q8, fix A and invert Ax:", v.case, "invariant sets", v.invariant_count)

S3 = make_dihedral(3)
v = lemma_trichotomy(S3, inner_automorphism(S3, 3))
print("S3, conjugation by a reflection:", v.case, "slack", v.slack)

# across a whole group, verdicts and the tighter bound for small-index fixed subgroups
G = make_abelian([2, 4])
for idx, phi in all_automorphisms(G).non_identity():
    v = lemma_trichotomy(G, phi)
    r = refined_bound_check(G, phi)
    extra = "" if r is None else f"  index {r.index} slack {r.slack} {r.exception or ''}"
    print(f"C2xC4 phi#{idx}: {v.case:17s} o = {v.orbit_count}{extra}")
