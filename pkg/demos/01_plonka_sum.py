"""
Building a Płonka sum
=====================

Two copies of the four-element Boolean algebra sit over the chain i < j.
The transition sends a to 1_j and a' to 0_j.  Operations on elements from
different fibers first push everything up to the join fiber.
"""

from plonka.fixtures import ex22
from plonka.sums import plonka_sum

system = ex22()
P = plonka_sum(system)
A = P.carrier
print(A, "with elements", list(A.names))

# Inside one fiber nothing changes: a and a' meet in 0_i.
n = A.index
print("a  and a' =", A.names[A.apply("and", n("a"), n("a'"))])

# Across fibers a' is first pushed to j, where it becomes 0_j.
print("a' and b  =", A.names[A.apply("and", n("a'"), n("b"))])
print("a' or  b  =", A.names[A.apply("or", n("a'"), n("b"))])

# Constants are read in the bottom fiber.
print("one       =", A.names[A.tables["one"]])

# Every result lands in the join of the argument fibers.
for i in range(P.index.size):
    print("fiber", P.index.names[i], "->", [A.names[e] for e in P.members(i)])
