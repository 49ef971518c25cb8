"""
Which identities survive in the sum
===================================

An identity is regular when both sides use the same variables.  A sum of
two or more fibers keeps the regular identities of its fibers and loses
every other one.
"""

from plonka.algebra import satisfies
from plonka.fixtures import BA, IRREGULAR_DUALS, boolean_laws, ex22, p22
from plonka.sums import identity_transfer_report
from plonka.terms import parse_identity

ids = boolean_laws() + [parse_identity(s, BA) for s in IRREGULAR_DUALS]
print(f"{'identity':44} regular  sum")
for row in identity_transfer_report(ex22(), ids):
    print(f"{str(row.identity):44} {str(row.regular):8} {row.sum_satisfies}")

# The counterexample reported for absorption is the first one in element order.
A = p22().carrier
result = satisfies(A, parse_identity("and(x, or(x, y)) = x", BA))
print({v: A.names[e] for v, e in result.counterexample.items()})
