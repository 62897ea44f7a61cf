"""Census engine for finite groups and their Cayley (di)graphs.

Groups are explicit multiplication tables (:mod:`.groups`); automorphisms are
image tables (:mod:`.automorphisms`); inverse-closed connection sets and
their invariance under ``<inversion, phi>`` live in :mod:`.subsets`; Cayley
graphs and their full automorphism groups in :mod:`.graphs`; sweeps and
reports in :mod:`.census`.
"""

from .automorphisms import (
    AutomorphismList,
    GroupMap,
    all_automorphisms,
    dicyclic_bar_iota,
    fixed_points,
    inner_automorphism,
    inversion_map,
    inverted_points,
    is_automorphism,
    is_generalized_dicyclic,
)
from .catalog import CatalogEntry, catalog, get_group
from .census import CensusRecord, census_exact, census_sample, classify_one, verify_lemmas
from .graphs import (
    CayleyGraph,
    ClassificationRecord,
    aut_stabilizer_of_S,
    automorphism_group,
    brute_force_automorphism_order,
    build_cayley,
    classify,
    is_normal_in,
    normalizer_order,
    right_regular_embedding,
)
from .groups import (
    ElementSubset,
    GeneralizedDicyclicWitness,
    Group,
    c_param,
    center,
    core,
    exponent,
    group_from_table,
    involution_set,
    is_abelian,
    is_normal,
    make_abelian,
    make_cyclic,
    make_dihedral,
    make_direct_product,
    make_generalized_dicyclic,
    subgroup_generated,
)
from .io import format_group_table, parse_group_table, read_group_table, write_group_table
from .perms import PermGroup
from .subsets import (
    OrbitPartition,
    TrichotomyVerdict,
    Verdict,
    count_inverse_closed,
    count_phi_invariant_inverse_closed,
    enumerate_inverse_closed,
    is_inverse_closed,
    lemma_trichotomy,
    obstruction_census,
    orbit_count,
    refined_bound_check,
)

__version__ = "0.1.0"
