"""
Homomorphisms between sums keep fibers together
===============================================

Boolean algebras satisfy t(x, y) = x for a term using both variables, so
every homomorphism between sums of Boolean algebras maps each fiber into a
single fiber, and the induced index map preserves joins.
"""

from plonka.algebra import enumerate_homomorphisms
from plonka.fixtures import p22
from plonka.systems import check_fibre_preservation, fibre_map_of_hom

P = p22()
A = P.carrier
homs = enumerate_homomorphisms(A, A)
print(len(homs), "endomorphisms of the sum")
for h in homs:
    phi = fibre_map_of_hom(h, P, P)
    shown = " ".join(A.names[v] for v in h.map)
    print(f"{shown:40} fibres kept: {check_fibre_preservation(h, P, P)}  phi = {phi}")
