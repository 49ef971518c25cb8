"""Finite Stone duality and its lift to semilattice systems.

A finite Boolean algebra corresponds to its set of atoms, a homomorphism
``h: A -> B`` to the map ``atoms(B) -> atoms(A)`` sending ``beta`` to the
unique atom ``alpha`` with ``beta <= h(alpha)``.  Going back, a finite set
``X`` gives the powerset algebra and ``g: X -> Y`` the preimage map
``P(Y) -> P(X)``.  Dual objects are plain finite sets: a finite Stone space
is discrete.

Points of a dual set are positions in the ordered list ``atoms(A)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .algebra import ElementMap, FiniteAlgebra, SignatureMismatch, is_homomorphism, satisfies
from .semilattice import Semilattice
from .sums import DirectSystem, validate_direct_system
from .systems import (
    DirectSystemMorphism,
    InverseSystem,
    InverseSystemMorphism,
    RoundTripError,
    find_inverse_isomorphism,
    find_system_isomorphism,
    validate_direct_morphism,
    validate_inverse_morphism,
    validate_inverse_system,
)
from .terms import Identity, Signature, parse_identity

BOOLEAN_SIGNATURE = Signature({"and": 2, "or": 2, "not": 1, "zero": 0, "one": 0})

BOOLEAN_AXIOMS = [
    "and(x, y) = and(y, x)",
    "or(x, y) = or(y, x)",
    "and(x, and(y, z)) = and(and(x, y), z)",
    "or(x, or(y, z)) = or(or(x, y), z)",
    "and(x, or(x, y)) = x",
    "or(x, and(x, y)) = x",
    "and(x, or(y, z)) = or(and(x, y), and(x, z))",
    "or(x, and(y, z)) = and(or(x, y), or(x, z))",
    "and(x, not(x)) = zero",
    "or(x, not(x)) = one",
]


class NotBoolean(ValueError):
    pass


@dataclass(frozen=True)
class BooleanAlgebraCheck:
    algebra: FiniteAlgebra
    verdict: bool
    failing: Optional[Identity] = None
    counterexample: Optional[dict[str, int]] = None

    def __bool__(self) -> bool:
        return self.verdict


def validate_boolean_algebra(A: FiniteAlgebra) -> BooleanAlgebraCheck:
    if A.signature != BOOLEAN_SIGNATURE:
        raise SignatureMismatch(f"expected {BOOLEAN_SIGNATURE!r}, got {A.signature!r}")
    for text in BOOLEAN_AXIOMS:
        law = parse_identity(text, BOOLEAN_SIGNATURE)
        result = satisfies(A, law)
        if not result:
            return BooleanAlgebraCheck(A, False, law, result.counterexample)
    return BooleanAlgebraCheck(A, True)


def _require_boolean(A: FiniteAlgebra) -> None:
    check = validate_boolean_algebra(A)
    if not check:
        raise NotBoolean(f"{check.failing} fails at {check.counterexample}")


def atoms(A: FiniteAlgebra) -> tuple[int, ...]:
    """Minimal nonzero elements of a Boolean algebra, in index order."""
    _require_boolean(A)
    meet = A.tables["and"]
    zero = A.tables["zero"]
    below = meet == np.arange(A.size)[:, None]  # below[x, y]: x <= y
    found = tuple(
        u for u in range(A.size) if u != zero and all(v == u or v == zero or not below[v, u] for v in range(A.size))
    )
    if 2 ** len(found) != A.size:
        raise NotBoolean(f"{len(found)} atoms for {A.size} elements")
    return found


def _leq(A: FiniteAlgebra, x: int, y: int) -> bool:
    return A.apply("and", x, y) == x


def dualize_boolean_hom(h: ElementMap) -> tuple[int, ...]:
    """The dual map ``atoms(target) -> atoms(source)`` as positions in the atom lists."""
    if not is_homomorphism(h):
        raise ValueError("not a homomorphism")
    src, dst = atoms(h.source), atoms(h.target)
    out = []
    for beta in dst:
        hits = [k for k, alpha in enumerate(src) if _leq(h.target, beta, h(alpha))]
        if len(hits) != 1:
            raise NotBoolean(f"atom {h.target.names[beta]} lies below {len(hits)} images of atoms")
        out.append(hits[0])
    return tuple(out)


def _subset_name(mask: int, points: Sequence[str]) -> str:
    return "{" + ",".join(p for k, p in enumerate(points) if mask >> k & 1) + "}"


def primal_powerset_algebra(n: int, points: Optional[Sequence[str]] = None) -> FiniteAlgebra:
    """All subsets of ``{0, .., n-1}``, element ``m`` being the subset with bitmask ``m``."""
    if points is None:
        points = [str(k) for k in range(n)]
    size = 2**n
    m = np.arange(size)
    full = size - 1
    return FiniteAlgebra(
        BOOLEAN_SIGNATURE,
        size,
        {
            "and": m[:, None] & m[None, :],
            "or": m[:, None] | m[None, :],
            "not": full ^ m,
            "zero": 0,
            "one": full,
        },
        [_subset_name(k, points) for k in range(size)],
    )


def primal_of_function(g: Sequence[int], n_source: int, n_target: int) -> ElementMap:
    """Preimage map ``P(Y) -> P(X)`` of ``g: X -> Y``."""
    if len(g) != n_source or any(not 0 <= v < n_target for v in g):
        raise ValueError("g is not a map between the given sets")
    PX, PY = primal_powerset_algebra(n_source), primal_powerset_algebra(n_target)
    pre = tuple(sum(1 << x for x in range(n_source) if S >> g[x] & 1) for S in range(2**n_target))
    h = ElementMap(PY, PX, pre)
    if not is_homomorphism(h):
        raise RoundTripError("preimage map is not a homomorphism")
    return h


def dualize_direct_system(sys: DirectSystem) -> InverseSystem:
    validate_direct_system(sys)
    for i, A in enumerate(sys.fibers):
        check = validate_boolean_algebra(A)
        if not check:
            raise NotBoolean(f"fiber {i}: {check.failing} fails at {check.counterexample}")
    sizes = tuple(len(atoms(A)) for A in sys.fibers)
    transitions = {(i, j): dualize_boolean_hom(sys.hom(i, j)) for i, j in sys.index.strict_pairs()}
    return validate_inverse_system(InverseSystem(sys.index, sizes, transitions))


def dualize_direct_morphism(m: DirectSystemMorphism) -> InverseSystemMorphism:
    """``(phi, f_i): A -> B`` becomes ``(phi, f_i*): dual(B) -> dual(A)``."""
    validate_direct_morphism(m)
    comps = tuple(
        dualize_boolean_hom(ElementMap(m.source.fibers[i], m.target.fibers[m.phi[i]], f))
        for i, f in enumerate(m.components)
    )
    dual = InverseSystemMorphism(dualize_direct_system(m.target), dualize_direct_system(m.source), m.phi, comps)
    return validate_inverse_morphism(dual)


def primalize_inverse_system(inv: InverseSystem) -> DirectSystem:
    validate_inverse_system(inv)
    fibers = tuple(primal_powerset_algebra(n) for n in inv.sizes)
    transitions = {
        (i, j): primal_of_function(p, inv.sizes[j], inv.sizes[i]).map for (i, j), p in inv.transitions.items()
    }
    return validate_direct_system(DirectSystem(inv.index, fibers, transitions))


def primalize_inverse_morphism(m: InverseSystemMorphism) -> DirectSystemMorphism:
    """``(phi, f_j): X -> Y`` becomes ``(phi, f_j^-1): primal(Y) -> primal(X)``."""
    validate_inverse_morphism(m)
    X, Y = m.source, m.target
    comps = tuple(primal_of_function(f, X.sizes[m.phi[j]], Y.sizes[j]).map for j, f in enumerate(m.components))
    return validate_direct_morphism(
        DirectSystemMorphism(primalize_inverse_system(Y), primalize_inverse_system(X), m.phi, comps)
    )


@dataclass(frozen=True)
class DualityReport:
    direct_iso: DirectSystemMorphism
    inverse_iso: InverseSystemMorphism
    pairs_checked: int = 0


def duality_roundtrip_check(
    sys: DirectSystem,
    pairs: Sequence[tuple[DirectSystemMorphism, DirectSystemMorphism]] = (),
) -> DualityReport:
    """Both round trips up to isomorphism, plus ``dual(m2 . m1) = dual(m1) . dual(m2)`` on ``pairs``."""
    inv = dualize_direct_system(sys)
    direct_iso = find_system_isomorphism(primalize_inverse_system(inv), sys)
    if direct_iso is None:
        raise RoundTripError("primal(dual(sys)) is not isomorphic to sys")
    inverse_iso = find_inverse_isomorphism(dualize_direct_system(primalize_inverse_system(inv)), inv)
    if inverse_iso is None:
        raise RoundTripError("dual(primal(X)) is not isomorphic to X")
    for m1, m2 in pairs:
        lhs = dualize_direct_morphism(m1.then(m2))
        rhs = dualize_direct_morphism(m2).then(dualize_direct_morphism(m1))
        if lhs != rhs:
            raise RoundTripError("duality does not reverse composition")
    return DualityReport(direct_iso, inverse_iso, len(pairs))
