"""
Finite duality for systems of Boolean algebras
==============================================

A finite Boolean algebra is determined by its atoms and a homomorphism by
the map it induces backwards on atoms.  Applied fiber by fiber, a direct
system of Boolean algebras turns into an inverse system of finite sets.
"""

from plonka.fixtures import b4, ex22, fold
from plonka.stone import (
    atoms,
    dualize_direct_morphism,
    dualize_direct_system,
    duality_roundtrip_check,
    primal_of_function,
    primalize_inverse_system,
)

print("atoms of B4:", [b4().names[u] for u in atoms(b4())])

inv = dualize_direct_system(ex22())
print("dual sets:", inv.sizes, "transition X_j -> X_i:", inv.transition(0, 1))

# The constant map back to the first point gives the original transition again.
print("primal of the constant map:", primal_of_function((0, 0), 2, 2).map)

back = primalize_inverse_system(inv)
print("primal transition:", back.transition(0, 1))

d = dualize_direct_morphism(fold())
print("dual of the fold: phi =", d.phi, "components", d.components)

report = duality_roundtrip_check(ex22(), [(fold(), fold())])
print("round trips ok; composition pairs checked:", report.pairs_checked)
