"""
Full symmetry of a Cayley graph
===============================

Compute the automorphism group of Cay(R, S) by partition refinement, compare
it with a brute-force scan, and ask whether the right regular copy of R is
normal in it.
"""

from cayley_census import (
    all_automorphisms,
    automorphism_group,
    brute_force_automorphism_order,
    build_cayley,
    classify,
    make_abelian,
    make_cyclic,
    make_dihedral,
    normalizer_order,
    right_regular_embedding,
)

cases = [
    ("C4", make_cyclic(4), [1]),
    ("C4", make_cyclic(4), [1, 3]),
    ("C2xC2", make_abelian([2, 2]), []),
    ("S3", make_dihedral(3), [1, 2, 3]),
]

for name, G, S in cases:
    graph = build_cayley(G, G.subset(S))
    aut = automorphism_group(graph)
    N = normalizer_order(aut, right_regular_embedding(G))
    print(f"Cay({name}, {S}): |Aut| = {aut.order} (scan {brute_force_automorphism_order(graph)}), "
          f"|N(R)| = {N}, base {aut.base}")

D5 = make_dihedral(5)
rec = classify(D5, D5.subset([5, 6, 1, 4]), all_automorphisms(D5))
print("D5 with two reflections and r^(+-1):", rec.as_dict())
