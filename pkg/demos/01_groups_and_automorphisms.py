"""
Groups as tables, and their automorphisms
=========================================

Build a few small groups, look at their element orders and count how many
ways each one can be mapped onto itself.
"""

import numpy as np

from cayley_census import (
    all_automorphisms,
    c_param,
    involution_set,
    make_abelian,
    make_cyclic,
    make_dihedral,
    make_generalized_dicyclic,
)

# Q8 arises as the dicyclic extension of C4 by its unique involution
Q8, witness = make_generalized_dicyclic(make_cyclic(4), 2)
groups = {
    "C4": make_cyclic(4),
    "C2xC2": make_abelian([2, 2]),
    "S3": make_dihedral(3),
    "Q8": Q8,
    "D4": make_dihedral(4),
}

for name, G in groups.items():
    orders = np.bincount(G.elem_order)
    print(f"{name:6s} order {G.order:2d}  element orders {dict((k, int(v)) for k, v in enumerate(orders) if v)}")

# c counts the independent yes/no choices behind an inverse-closed set
for name, G in groups.items():
    auts = all_automorphisms(G)
    print(f"{name:6s} |I| = {len(involution_set(G))}  c = {c_param(G)}  |Aut| = {len(auts)}")

# the coset A*x of Q8 consists of elements squaring to y
print("A =", witness.A.elements(), " x =", witness.x, " x*x =", Q8.m(witness.x, witness.x))
