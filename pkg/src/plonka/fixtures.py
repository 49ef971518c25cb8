"""Small named algebras and systems used throughout the docs and tests."""
from __future__ import annotations

from pathlib import Path

from .algebra import FiniteAlgebra
from .semilattice import chain
from .stone import BOOLEAN_SIGNATURE
from .sums import DirectSystem, PlonkaAlgebra, plonka_sum
from .terms import Identity, Signature, Term, parse_identity, parse_term

BA = BOOLEAN_SIGNATURE
JOIN = Signature({"or": 2})
# Boolean operations without the constants
BA_NO_CONSTANTS = Signature({"and": 2, "or": 2, "not": 1})

ABSORPTION_TERM = "and(x, or(x, y))"

B2_TABLES = {
    "and": [[0, 0], [0, 1]],
    "or": [[0, 1], [1, 1]],
    "not": [1, 0],
    "zero": 0,
    "one": 1,
}

B4_TABLES = {
    "and": [[0, 0, 0, 0], [0, 1, 0, 1], [0, 0, 2, 2], [0, 1, 2, 3]],
    "or": [[0, 1, 2, 3], [1, 1, 3, 3], [2, 3, 2, 3], [3, 3, 3, 3]],
    "not": [3, 2, 1, 0],
    "zero": 0,
    "one": 3,
}

# 12 identities checked against the sum of EX22; the last two are irregular
BOOLEAN_LAWS_12 = [
    "and(x, y) = and(y, x)",
    "or(x, y) = or(y, x)",
    "and(x, and(y, z)) = and(and(x, y), z)",
    "or(x, or(y, z)) = or(or(x, y), z)",
    "and(x, x) = x",
    "or(x, x) = x",
    "not(and(x, y)) = or(not(x), not(y))",
    "not(or(x, y)) = and(not(x), not(y))",
    "not(not(x)) = x",
    "and(x, or(y, z)) = or(and(x, y), and(x, z))",
    "and(x, or(x, y)) = x",
    "or(x, not(x)) = one",
]

# the dual forms of absorption and complementation
IRREGULAR_DUALS = [
    "or(x, and(x, y)) = x",
    "and(x, not(x)) = zero",
]


def b2() -> FiniteAlgebra:
    return FiniteAlgebra(BA, 2, B2_TABLES, ["0", "1"])


def b4(names=("0", "a", "a'", "1")) -> FiniteAlgebra:
    return FiniteAlgebra(BA, 4, B4_TABLES, names)


def join_chain2() -> FiniteAlgebra:
    """The 2-element join-semilattice as an algebra with one operation."""
    return FiniteAlgebra(JOIN, 2, {"or": [[0, 1], [1, 1]]})


def ex22() -> DirectSystem:
    """Two copies of B4 over the chain i < j, with a -> 1_j and a' -> 0_j."""
    return DirectSystem(
        chain(2, ["i", "j"]),
        (b4(("0_i", "a", "a'", "1_i")), b4(("0_j", "b", "b'", "1_j"))),
        {(0, 1): (0, 3, 0, 3)},
    )


def p22() -> PlonkaAlgebra:
    return plonka_sum(ex22())


def reduct(A: FiniteAlgebra, sig: Signature) -> FiniteAlgebra:
    return FiniteAlgebra(sig, A.size, {op: A.tables[op] for op in sig.ops}, A.names)


def ex22_no_constants() -> DirectSystem:
    S = ex22()
    return DirectSystem(S.index, tuple(reduct(A, BA_NO_CONSTANTS) for A in S.fibers), S.transitions)


def collapse(sys: DirectSystem):
    """EX22 -> EX22 pushing fiber i through the transition into fiber j.

    It moves the bottom index, so it is a morphism only when there are no
    constants, e.g. on ``ex22_no_constants()``.
    """
    from .systems import DirectSystemMorphism

    return DirectSystemMorphism(sys, sys, (1, 1), (sys.transition(0, 1), (0, 1, 2, 3)))


def fold() -> "DirectSystemMorphism":
    """EX22 -> EX22 folding fiber j back onto fiber i (b -> a, b' -> a')."""
    from .systems import DirectSystemMorphism

    S = ex22()
    return DirectSystemMorphism(S, S, (0, 0), (S.transition(0, 1), (0, 1, 2, 3)))


def absorption() -> Term:
    return parse_term(ABSORPTION_TERM, BA)


def boolean_laws() -> list[Identity]:
    return [parse_identity(s, BA) for s in BOOLEAN_LAWS_12]


def data_path(name: str) -> Path:
    """Path of a shipped JSON fixture, e.g. ``data_path("ex22.json")``."""
    return Path(__file__).parent / "data" / name


def golden_documents() -> dict[str, dict]:
    """The shipped fixture files, keyed by file name, as freshly built documents."""
    from . import documents as docs

    return {
        "ba.json": docs.signature_to_doc(BA),
        "b2.json": docs.algebra_to_doc(b2()),
        "b4.json": docs.algebra_to_doc(b4()),
        "ex22.json": docs.system_to_doc(ex22()),
        "p22.json": docs.algebra_to_doc(p22().carrier),
        "boolean_laws.json": {"signature": docs.signature_to_doc(BA), "identities": BOOLEAN_LAWS_12},
    }
