"""
Terms, identities and witnesses
===============================

Terms are parsed against a signature.  A witness is a binary term that
uses both variables and still equals its first argument everywhere.
"""

from plonka.algebra import find_irregularity_witness
from plonka.fixtures import BA, b2, b4, join_chain2
from plonka.terms import enumerate_terms, format_term, is_regular, parse_identity

ident = parse_identity("and(x, or(x, y)) = x", BA)
print(ident, "is regular:", is_regular(ident))

print(len(enumerate_terms(BA, ["x", "y"], 2)), "terms of depth at most 2 in x, y")

for name, A in [("B2", b2()), ("B4", b4()), ("join chain", join_chain2())]:
    t = find_irregularity_witness(A, 2)
    print(f"{name:10} witness: {format_term(t) if t is not None else None}")
