"""Finite algebras with Płonka sum representations.

Build Płonka sums of semilattice direct systems, decompose algebras along a
partition function, check identities, and move between direct systems of
finite Boolean algebras and inverse systems of finite sets.
"""
from .algebra import (
    ElementMap,
    FiniteAlgebra,
    enumerate_homomorphisms,
    evaluate,
    find_irregularity_witness,
    find_isomorphism,
    is_homomorphism,
    satisfies,
)
from .semilattice import Semilattice, is_semilattice_homomorphism, validate_semilattice
from .stone import (
    atoms,
    dualize_boolean_hom,
    dualize_direct_morphism,
    dualize_direct_system,
    duality_roundtrip_check,
    primal_of_function,
    primal_powerset_algebra,
    primalize_inverse_system,
    validate_boolean_algebra,
)
from .sums import (
    DirectSystem,
    PlonkaAlgebra,
    decompose,
    identity_transfer_report,
    plonka_sum,
    plonka_view,
    validate_direct_system,
    verify_partition_function,
)
from .systems import (
    DirectSystemMorphism,
    InverseSystem,
    InverseSystemMorphism,
    check_fibre_preservation,
    fibre_map_of_hom,
    find_system_isomorphism,
    functor_F,
    functor_F_map,
    functor_G,
    functor_G_map,
    roundtrip_equivalence_check,
    sum_of_morphism,
    validate_direct_morphism,
    validate_inverse_morphism,
    validate_inverse_system,
)
from .terms import (
    App,
    Identity,
    Signature,
    Var,
    enumerate_terms,
    format_term,
    is_regular,
    parse_identity,
    parse_term,
    variables,
)

__version__ = "0.1.0"
