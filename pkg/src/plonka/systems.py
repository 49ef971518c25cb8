"""Morphisms of semilattice direct and inverse systems, and the two functors
between algebras with a partition function and their direct systems.

A direct-system morphism ``(phi, f)`` from ``A`` (over ``I``) to ``B`` (over
``J``) has ``phi: I -> J`` and components ``f[i]: A_i -> B_phi(i)``.  When
the signature has constants they live in the bottom fiber of each sum, so
``phi`` must also send bottom to bottom; otherwise the induced map between
the sums moves the constants and is not a homomorphism.

An inverse system has plain finite sets ``X_i = {0, .., sizes[i] - 1}`` and
maps ``p[(i, i')]: X_i' -> X_i`` for ``i < i'``.  A morphism ``X -> Y`` has
``phi: J -> I`` (backwards on indices) and components ``f[j]: X_phi(j) -> Y_j``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Iterator, Mapping, Optional, Sequence

from .algebra import (
    ElementMap,
    FiniteAlgebra,
    find_isomorphism,
    is_homomorphism,
    iter_isomorphisms,
    satisfies,
)
from .semilattice import Semilattice, is_semilattice_homomorphism, semilattice_isomorphisms
from .sums import (
    DirectSystem,
    PlonkaAlgebra,
    Violation,
    plonka_sum,
    plonka_view,
    validate_direct_system,
)
from .terms import Identity, Term, Var


class MorphismError(ValueError):
    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        lines = "\n".join(f"  [{v.kind}] {v.message}" for v in self.violations)
        super().__init__(f"invalid morphism:\n{lines}")


class InverseSystemError(ValueError):
    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        lines = "\n".join(f"  [{v.kind}] {v.message}" for v in self.violations)
        super().__init__(f"invalid inverse system:\n{lines}")


class NotAHomomorphism(ValueError):
    pass


class NotFibrePreserving(ValueError):
    pass


class RoundTripError(RuntimeError):
    """A round trip that should produce an isomorphic object did not."""


# -- direct system morphisms -----------------------------------------------

@dataclass(frozen=True, eq=False)
class DirectSystemMorphism:
    source: DirectSystem
    target: DirectSystem
    phi: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(int(v) for v in self.phi))
        object.__setattr__(self, "components", tuple(tuple(int(v) for v in c) for c in self.components))

    @classmethod
    def identity(cls, sys: DirectSystem) -> "DirectSystemMorphism":
        return cls(sys, sys, tuple(range(sys.index.size)), tuple(tuple(range(A.size)) for A in sys.fibers))

    def then(self, other: "DirectSystemMorphism") -> "DirectSystemMorphism":
        """``other`` after ``self``."""
        phi = tuple(other.phi[j] for j in self.phi)
        comps = tuple(
            tuple(other.components[self.phi[i]][v] for v in self.components[i]) for i in range(len(self.phi))
        )
        return DirectSystemMorphism(self.source, other.target, phi, comps)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DirectSystemMorphism):
            return NotImplemented
        return self.phi == other.phi and self.components == other.components


def preserves_bottom(S: DirectSystem, T: DirectSystem, phi: Sequence[int]) -> bool:
    """Whether ``phi`` keeps the constants in place: ``phi(bottom) = bottom`` when there are any."""
    if not S.signature.constants():
        return True
    I, J = S.index, T.index
    return I.bottom is None or J.bottom is None or phi[I.bottom] == J.bottom


def direct_morphism_violations(m: DirectSystemMorphism) -> list[Violation]:
    S, T = m.source, m.target
    I, J = S.index, T.index
    out: list[Violation] = []
    if len(m.phi) != I.size or any(not 0 <= v < J.size for v in m.phi):
        return [Violation("structure", "phi is not a map between the index semilattices")]
    if not is_semilattice_homomorphism(I, J, m.phi):
        out.append(Violation("phi", "phi does not preserve joins"))
    if not preserves_bottom(S, T, m.phi):
        out.append(Violation("phi-bottom", "constants live in the bottom fiber, so phi must send bottom to bottom"))
    if len(m.components) != I.size:
        return out + [Violation("structure", f"expected {I.size} components, got {len(m.components)}")]
    typed = [False] * I.size
    for i, f in enumerate(m.components):
        A, B = S.fibers[i], T.fibers[m.phi[i]]
        if len(f) != A.size or any(not 0 <= v < B.size for v in f):
            out.append(Violation("component-type", f"component {i} is not a map A_{i} -> B_{m.phi[i]}", (i,)))
            continue
        typed[i] = True
        check = is_homomorphism(ElementMap(A, B, f))
        if not check:
            out.append(
                Violation("component-hom", f"component {i} does not preserve {check.op!r} at {check.args}", (i, check.op, check.args))
            )
    for i, k in I.strict_pairs():
        if not (typed[i] and typed[k]) or not J.le(m.phi[i], m.phi[k]):
            continue
        p = S.transition(i, k)
        q = T.transition(m.phi[i], m.phi[k])
        fi, fk = m.components[i], m.components[k]
        for a in range(S.fibers[i].size):
            if fk[p[a]] != q[fi[a]]:
                out.append(Violation("square", f"square ({i}, {k}) fails at element {a}", (i, k, a)))
                break
    return out


def validate_direct_morphism(m: DirectSystemMorphism) -> DirectSystemMorphism:
    violations = direct_morphism_violations(m)
    if violations:
        raise MorphismError(violations)
    return m


def sum_of_morphism(
    m: DirectSystemMorphism,
    src: Optional[PlonkaAlgebra] = None,
    dst: Optional[PlonkaAlgebra] = None,
) -> ElementMap:
    """The map between Płonka sums acting as ``f_i`` on fiber ``i``."""
    validate_direct_morphism(m)
    src = src or plonka_sum(m.source)
    dst = dst or plonka_sum(m.target)
    h = ElementMap(
        src.carrier,
        dst.carrier,
        tuple(dst.element(m.phi[i], m.components[i][l]) for i, l in zip(src.fiber_of, src.local_of)),
    )
    check = is_homomorphism(h)
    if not check:
        raise RoundTripError(f"sum of a valid morphism is not a homomorphism ({check.op!r} at {check.args})")
    return h


def check_fibre_preservation(h: ElementMap, src: PlonkaAlgebra, dst: PlonkaAlgebra) -> bool:
    images: dict[int, set[int]] = {}
    for e, v in enumerate(h.map):
        images.setdefault(src.fiber_of[e], set()).add(dst.fiber_of[v])
    return all(len(s) == 1 for s in images.values())


def fibre_map_of_hom(h: ElementMap, src: PlonkaAlgebra, dst: PlonkaAlgebra) -> tuple[int, ...]:
    """The index map ``i -> j`` with ``h(A_i) <= B_j``."""
    check = is_homomorphism(h)
    if not check:
        raise NotAHomomorphism(f"map does not preserve {check.op!r} at {check.args}")
    if not check_fibre_preservation(h, src, dst):
        raise NotFibrePreserving("some fiber is split across several target fibers")
    phi = [0] * src.index.size
    for e, v in enumerate(h.map):
        phi[src.fiber_of[e]] = dst.fiber_of[v]
    if not is_semilattice_homomorphism(src.index, dst.index, phi):
        raise RoundTripError("induced index map is not a semilattice homomorphism")
    return tuple(phi)


# -- the two functors -----------------------------------------------------

def functor_F(A: FiniteAlgebra, t: Term) -> DirectSystem:
    return plonka_view(A, t).source


def functor_F_map(h: ElementMap, t: Term) -> DirectSystemMorphism:
    src, dst = plonka_view(h.source, t), plonka_view(h.target, t)
    phi = fibre_map_of_hom(h, src, dst)
    comps = tuple(tuple(dst.local_of[h.map[e]] for e in src.members(i)) for i in range(src.index.size))
    return validate_direct_morphism(DirectSystemMorphism(src.source, dst.source, phi, comps))


def functor_G(sys: DirectSystem) -> PlonkaAlgebra:
    return plonka_sum(sys)


def functor_G_map(m: DirectSystemMorphism) -> ElementMap:
    return sum_of_morphism(m)


# -- isomorphisms of direct systems ---------------------------------------

def find_system_isomorphism(S: DirectSystem, T: DirectSystem) -> Optional[DirectSystemMorphism]:
    """An index isomorphism plus fiberwise algebra isomorphisms commuting with all transitions."""
    if S.index.size != T.index.size or S.signature != T.signature:
        return None
    order = S.index.linear_extension()
    for sigma in semilattice_isomorphisms(S.index, T.index):
        comps: dict[int, tuple[int, ...]] = {}

        def fits(i: int, f: tuple[int, ...]) -> bool:
            for k, g in comps.items():
                for lo, hi, flo, fhi in ((k, i, g, f), (i, k, f, g)):
                    if S.index.lt(lo, hi):
                        p = S.transition(lo, hi)
                        q = T.transition(sigma[lo], sigma[hi])
                        if any(fhi[p[a]] != q[flo[a]] for a in range(len(p))):
                            return False
            return True

        def search(pos: int) -> bool:
            if pos == len(order):
                return True
            i = order[pos]
            for iso in iter_isomorphisms(S.fibers[i], T.fibers[sigma[i]]):
                if fits(i, iso.map):
                    comps[i] = iso.map
                    if search(pos + 1):
                        return True
                    del comps[i]
            return False

        if search(0):
            m = DirectSystemMorphism(S, T, sigma, tuple(comps[i] for i in range(S.index.size)))
            return validate_direct_morphism(m)
    return None


@dataclass(frozen=True)
class RoundTripReport:
    system_iso: DirectSystemMorphism
    algebra_iso: ElementMap


def roundtrip_equivalence_check(sys: DirectSystem, t: Term) -> RoundTripReport:
    """Check ``F(G(sys)) ~ sys`` and ``G(F(A)) ~ A`` for ``A = G(sys)``."""
    validate_direct_system(sys)
    ident = Identity(t, Var("x"))
    for i, A in enumerate(sys.fibers):
        if not satisfies(A, ident):
            raise ValueError(f"fiber {i} does not satisfy {ident}")
    A = functor_G(sys).carrier
    back = functor_F(A, t)
    sys_iso = find_system_isomorphism(back, sys)
    if sys_iso is None:
        raise RoundTripError("F(G(sys)) is not isomorphic to sys")
    rebuilt = functor_G(back).carrier
    alg_iso = find_isomorphism(rebuilt, A)
    if alg_iso is None:
        raise RoundTripError("G(F(A)) is not isomorphic to A")
    return RoundTripReport(sys_iso, alg_iso)


# -- inverse systems -------------------------------------------------------

@dataclass(frozen=True, eq=False)
class InverseSystem:
    index: Semilattice
    sizes: tuple[int, ...]
    transitions: Mapping[tuple[int, int], tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        object.__setattr__(
            self,
            "transitions",
            {(int(i), int(j)): tuple(int(v) for v in m) for (i, j), m in sorted(self.transitions.items())},
        )

    def transition(self, i: int, j: int) -> tuple[int, ...]:
        """The map ``X_j -> X_i`` for ``i <= j``."""
        if i == j:
            return tuple(range(self.sizes[i]))
        return self.transitions[(i, j)]

    def __repr__(self) -> str:
        return f"<InverseSystem index={list(self.index.names)} sizes={list(self.sizes)}>"


def inverse_system_violations(inv: InverseSystem) -> list[Violation]:
    I = inv.index
    if len(inv.sizes) != I.size:
        return [Violation("structure", f"{len(inv.sizes)} objects for {I.size} indices")]
    out = [Violation("structure", f"object {i} has negative size", (i,)) for i, s in enumerate(inv.sizes) if s < 0]
    usable = {}
    for (i, j), m in inv.transitions.items():
        if not (0 <= i < I.size and 0 <= j < I.size) or not I.lt(i, j):
            out.append(Violation("direction", f"transition keyed ({i}, {j}) does not go from a larger index to a smaller one", (i, j)))
            continue
        if len(m) != inv.sizes[j] or any(not 0 <= v < inv.sizes[i] for v in m):
            out.append(Violation("malformed-transition", f"transition ({i}, {j}) is not a map X_{j} -> X_{i}", (i, j)))
            continue
        usable[(i, j)] = m
    for i, j in I.strict_pairs():
        if (i, j) not in inv.transitions:
            out.append(Violation("missing-transition", f"no transition for comparable pair ({i}, {j})", (i, j)))

    def get(i, j):
        return tuple(range(inv.sizes[i])) if i == j else usable.get((i, j))

    for i, j, k in product(range(I.size), repeat=3):
        if not (I.lt(i, j) and I.lt(j, k)):
            continue
        pij, pjk, pik = get(i, j), get(j, k), get(i, k)
        if pij is None or pjk is None or pik is None:
            continue
        for x in range(inv.sizes[k]):
            if pij[pjk[x]] != pik[x]:
                out.append(Violation("composition", f"p_{i}{j} o p_{j}{k} != p_{i}{k} at point {x}", (i, j, k, x)))
                break
    return out


def validate_inverse_system(inv: InverseSystem) -> InverseSystem:
    violations = inverse_system_violations(inv)
    if violations:
        raise InverseSystemError(violations)
    return inv


@dataclass(frozen=True, eq=False)
class InverseSystemMorphism:
    source: InverseSystem
    target: InverseSystem
    phi: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(int(v) for v in self.phi))
        object.__setattr__(self, "components", tuple(tuple(int(v) for v in c) for c in self.components))

    @classmethod
    def identity(cls, inv: InverseSystem) -> "InverseSystemMorphism":
        return cls(inv, inv, tuple(range(inv.index.size)), tuple(tuple(range(s)) for s in inv.sizes))

    def then(self, other: "InverseSystemMorphism") -> "InverseSystemMorphism":
        """``other`` after ``self``."""
        phi = tuple(self.phi[k] for k in other.phi)
        comps = tuple(
            tuple(other.components[k][v] for v in self.components[other.phi[k]]) for k in range(len(other.phi))
        )
        return InverseSystemMorphism(self.source, other.target, phi, comps)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, InverseSystemMorphism):
            return NotImplemented
        return self.phi == other.phi and self.components == other.components


def inverse_morphism_violations(m: InverseSystemMorphism) -> list[Violation]:
    X, Y = m.source, m.target
    I, J = X.index, Y.index
    if len(m.phi) != J.size or any(not 0 <= v < I.size for v in m.phi):
        return [Violation("structure", "phi is not a map J -> I")]
    out: list[Violation] = []
    if not is_semilattice_homomorphism(J, I, m.phi):
        out.append(Violation("phi", "phi does not preserve joins"))
    if len(m.components) != J.size:
        return out + [Violation("structure", f"expected {J.size} components, got {len(m.components)}")]
    typed = [False] * J.size
    for j, f in enumerate(m.components):
        if len(f) != X.sizes[m.phi[j]] or any(not 0 <= v < Y.sizes[j] for v in f):
            out.append(Violation("component-type", f"component {j} is not a map X_{m.phi[j]} -> Y_{j}", (j,)))
        else:
            typed[j] = True
    for j, k in J.strict_pairs():
        if not (typed[j] and typed[k]):
            continue
        lo, hi = m.phi[j], m.phi[k]
        if not I.le(lo, hi):
            continue  # already reported through phi
        p = X.transition(lo, hi)
        q = Y.transition(j, k)
        fj, fk = m.components[j], m.components[k]
        for x in range(X.sizes[hi]):
            if fj[p[x]] != q[fk[x]]:
                out.append(Violation("square", f"square ({j}, {k}) fails at point {x}", (j, k, x)))
                break
    return out


def validate_inverse_morphism(m: InverseSystemMorphism) -> InverseSystemMorphism:
    violations = inverse_morphism_violations(m)
    if violations:
        raise MorphismError(violations)
    return m


def find_inverse_isomorphism(X: InverseSystem, Y: InverseSystem) -> Optional[InverseSystemMorphism]:
    """An isomorphism ``X -> Y``: index isomorphism ``J -> I`` with bijective components."""
    if X.index.size != Y.index.size:
        return None
    J = Y.index
    order = J.linear_extension()
    for phi in semilattice_isomorphisms(J, X.index):
        if any(X.sizes[phi[j]] != Y.sizes[j] for j in range(J.size)):
            continue
        comps: dict[int, tuple[int, ...]] = {}

        def fits(j: int, f: tuple[int, ...]) -> bool:
            for k, g in comps.items():
                for lo, hi, flo, fhi in ((k, j, g, f), (j, k, f, g)):
                    if J.lt(lo, hi):
                        p = X.transition(phi[lo], phi[hi])
                        q = Y.transition(lo, hi)
                        if any(flo[p[x]] != q[fhi[x]] for x in range(len(p))):
                            return False
            return True

        def search(pos: int) -> bool:
            if pos == len(order):
                return True
            j = order[pos]
            for f in permutations(range(Y.sizes[j])):
                if fits(j, f):
                    comps[j] = f
                    if search(pos + 1):
                        return True
                    del comps[j]
            return False

        if search(0):
            m = InverseSystemMorphism(X, Y, phi, tuple(comps[j] for j in range(J.size)))
            return validate_inverse_morphism(m)
    return None
