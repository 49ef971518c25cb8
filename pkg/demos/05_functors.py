"""
From algebras to systems and back
=================================

G takes a direct system to its Płonka sum and a system morphism to the map
acting fiberwise.  F decomposes along the partition term.  Both composites
come back isomorphic to where they started.
"""

from plonka.fixtures import absorption, ex22, fold, p22
from plonka.generate import corpus_system
from plonka.systems import functor_F_map, roundtrip_equivalence_check, sum_of_morphism

# The fold sends fiber j back onto fiber i, b to a and b' to a'.
h = sum_of_morphism(fold())
A = p22().carrier
print("sum of the fold:", {A.names[e]: A.names[v] for e, v in enumerate(h.map)})

m = functor_F_map(h, absorption())
print("F recovers phi =", m.phi, "and components", m.components)

report = roundtrip_equivalence_check(ex22(), absorption())
print("F(G(EX22)) ~ EX22 via index map", report.system_iso.phi)

ok = 0
for seed in range(50):
    roundtrip_equivalence_check(corpus_system(seed), absorption())
    ok += 1
print(ok, "random systems round-trip")
