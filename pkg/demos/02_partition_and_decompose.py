"""
Partition functions and decomposition
=====================================

In any Boolean algebra the term x and (x or y) equals x.  Read in a Płonka
sum of Boolean algebras it becomes a partition function, and the fibers,
the index order and the transitions can all be recovered from it.
"""

from plonka.fixtures import absorption, b4, p22
from plonka.sums import decompose, verify_partition_function
from plonka.terms import parse_term

A = p22().carrier
t = absorption()

check = verify_partition_function(A, t)
print(check.describe(A))

# The meet alone is not a partition function on B4: axiom 4 fails at `not`.
meet = parse_term("and(x, y)", A.signature)
print(verify_partition_function(b4(), meet).describe(b4()))

# Decompose back into a direct system.
D = decompose(A, t)
print("index order:", [(D.index.names[i], D.index.names[j]) for i, j in D.index.strict_pairs()])
for F in D.fibers:
    print("fiber:", list(F.names))
src, dst = D.fibers
print("transition:", {src.names[e]: dst.names[v] for e, v in enumerate(D.transition(0, 1))})
