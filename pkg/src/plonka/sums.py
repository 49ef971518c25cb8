"""Semilattice direct systems of algebras and their Płonka sums.

A direct system is an index semilattice, one algebra (fiber) per index and a
homomorphism ``A_i -> A_j`` for every strictly comparable pair ``i < j``.
Transitions are stored as tuples of local element indices keyed by
``(i, j)``; the identities on the diagonal are implicit.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, NamedTuple, Optional, Sequence

import numpy as np

from .algebra import (
    ElementMap,
    FiniteAlgebra,
    SignatureMismatch,
    is_homomorphism,
    satisfies,
    term_table,
)
from .semilattice import Semilattice, SemilatticeError
from .terms import Identity, Signature, Term, check_term, is_regular, variables


class Violation(NamedTuple):
    kind: str
    message: str
    witness: tuple = ()


class DirectSystemError(ValueError):
    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        lines = "\n".join(f"  [{v.kind}] {v.message}" for v in self.violations)
        super().__init__(f"invalid direct system:\n{lines}")


class DecompositionError(ValueError):
    """The given term does not decompose the algebra; ``kind`` says which step failed."""

    def __init__(self, kind: str, message: str, witness: tuple = ()):
        super().__init__(f"{kind}: {message}")
        self.kind = kind
        self.witness = witness


@dataclass(frozen=True, eq=False)
class DirectSystem:
    index: Semilattice
    fibers: tuple[FiniteAlgebra, ...]
    transitions: Mapping[tuple[int, int], tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "fibers", tuple(self.fibers))
        object.__setattr__(
            self,
            "transitions",
            {(int(i), int(j)): tuple(int(v) for v in m) for (i, j), m in sorted(self.transitions.items())},
        )

    @property
    def signature(self) -> Signature:
        return self.fibers[0].signature

    def transition(self, i: int, j: int) -> tuple[int, ...]:
        if i == j:
            return tuple(range(self.fibers[i].size))
        return self.transitions[(i, j)]

    def hom(self, i: int, j: int) -> ElementMap:
        return ElementMap(self.fibers[i], self.fibers[j], self.transition(i, j))

    def __repr__(self) -> str:
        sizes = [A.size for A in self.fibers]
        return f"<DirectSystem index={list(self.index.names)} fiber sizes={sizes}>"


def direct_system_violations(sys: DirectSystem) -> list[Violation]:
    """Every violated requirement of a semilattice direct system, in a fixed order."""
    out: list[Violation] = []
    I = sys.index
    if len(sys.fibers) != I.size:
        return [Violation("structure", f"{len(sys.fibers)} fibers for {I.size} indices")]
    sig = sys.fibers[0].signature
    for i, A in enumerate(sys.fibers):
        if A.signature != sig:
            out.append(Violation("signature", f"fiber {i} has a different signature", (i,)))
    if out:
        return out
    if not sig.operations(min_arity=1):
        out.append(Violation("signature", "signature needs an operation of arity >= 1"))
    if sig.constants() and I.bottom is None:
        out.append(Violation("missing-bottom", "signature has constants but the index has no bottom"))

    usable: dict[tuple[int, int], tuple[int, ...]] = {}
    for (i, j), m in sys.transitions.items():
        if not (0 <= i < I.size and 0 <= j < I.size) or not I.lt(i, j):
            out.append(Violation("extraneous-transition", f"no transition expected for ({i}, {j})", (i, j)))
            continue
        src, dst = sys.fibers[i], sys.fibers[j]
        if len(m) != src.size or any(not 0 <= v < dst.size for v in m):
            out.append(Violation("malformed-transition", f"transition ({i}, {j}) is not a map A_{i} -> A_{j}", (i, j)))
            continue
        usable[(i, j)] = m
        check = is_homomorphism(ElementMap(src, dst, m))
        if not check:
            out.append(
                Violation(
                    "non-homomorphism",
                    f"transition ({i}, {j}) does not preserve {check.op!r} at {check.args}",
                    (i, j, check.op, check.args),
                )
            )
    for i, j in I.strict_pairs():
        if (i, j) not in sys.transitions:
            out.append(Violation("missing-transition", f"no transition for comparable pair ({i}, {j})", (i, j)))

    def get(i, j):
        return tuple(range(sys.fibers[i].size)) if i == j else usable.get((i, j))

    for i, j, k in product(range(I.size), repeat=3):
        if not (I.lt(i, j) and I.lt(j, k)):
            continue
        fij, fjk, fik = get(i, j), get(j, k), get(i, k)
        if fij is None or fjk is None or fik is None:
            continue
        for a in range(sys.fibers[i].size):
            if fjk[fij[a]] != fik[a]:
                out.append(
                    Violation("coherence", f"f_{i}{k} != f_{j}{k} o f_{i}{j} at element {a}", (i, j, k, a))
                )
                break
    return out


def validate_direct_system(sys: DirectSystem) -> DirectSystem:
    violations = direct_system_violations(sys)
    if violations:
        raise DirectSystemError(violations)
    return sys


@dataclass(frozen=True, eq=False)
class PlonkaAlgebra:
    """An algebra together with its partition into fibers.

    ``fiber_of[e]`` and ``local_of[e]`` locate carrier element ``e`` as the
    ``local_of[e]``-th element of fiber ``fiber_of[e]`` of ``source``.
    """

    carrier: FiniteAlgebra
    index: Semilattice
    fiber_of: tuple[int, ...]
    local_of: tuple[int, ...]
    source: Optional[DirectSystem] = None

    def members(self, i: int) -> list[int]:
        found = [(l, e) for e, (f, l) in enumerate(zip(self.fiber_of, self.local_of)) if f == i]
        return [e for _, e in sorted(found)]

    def element(self, i: int, local: int) -> int:
        for e, (f, l) in enumerate(zip(self.fiber_of, self.local_of)):
            if f == i and l == local:
                return e
        raise KeyError((i, local))

    @property
    def size(self) -> int:
        return self.carrier.size


def _carrier_names(sys: DirectSystem) -> list[str]:
    names = [n for A in sys.fibers for n in A.names]
    if len(set(names)) == len(names):
        return names
    return [f"{n}@{sys.index.names[i]}" for i, A in enumerate(sys.fibers) for n in A.names]


def plonka_sum(sys: DirectSystem) -> PlonkaAlgebra:
    validate_direct_system(sys)
    I = sys.index
    sizes = [A.size for A in sys.fibers]
    offset = np.concatenate([[0], np.cumsum(sizes)]).astype(np.int64)
    N = int(offset[-1])
    fiber_of = np.repeat(np.arange(I.size), sizes)
    local_of = np.concatenate([np.arange(s) for s in sizes])
    # push[j][e]: carrier index of the image of e in fiber j (only meaningful when fiber_of[e] <= j)
    push = np.zeros((I.size, N), dtype=np.int64)
    for j in range(I.size):
        for e in range(N):
            i = int(fiber_of[e])
            if I.le(i, j):
                push[j, e] = offset[j] + sys.transition(i, j)[local_of[e]]

    tables: dict[str, object] = {}
    for op, k in sys.signature.items():
        if k == 0:
            if I.bottom is None:
                raise DirectSystemError([Violation("missing-bottom", "constants need a bottom index")])
            bot = I.bottom
            tables[op] = int(offset[bot] + sys.fibers[bot].tables[op])
            continue
        grid = np.indices((N,) * k, dtype=np.int64)
        j = fiber_of[grid[0]]
        for g in grid[1:]:
            j = I.join[j, fiber_of[g]]
        table = np.empty((N,) * k, dtype=np.int64)
        for jj in range(I.size):
            mask = j == jj
            if not mask.any():
                continue
            local_args = tuple(push[jj][g[mask]] - offset[jj] for g in grid)
            table[mask] = offset[jj] + sys.fibers[jj].tables[op][local_args]
        tables[op] = table
    carrier = FiniteAlgebra(sys.signature, N, tables, _carrier_names(sys))
    return PlonkaAlgebra(
        carrier,
        I,
        tuple(int(v) for v in fiber_of),
        tuple(int(v) for v in local_of),
        sys,
    )


# -- partition functions ---------------------------------------------------

AXIOMS = {
    1: "a.a = a",
    2: "a.(b.c) = (a.b).c",
    3: "a.(b.c) = a.(c.b)",
    4: "g(a1..an).b = g(a1.b, .., an.b)",
    5: "b.g(a1..an) = (..((b.a1).a2)..).an",
}


@dataclass(frozen=True)
class PartitionCheck:
    ok: bool
    axiom: Optional[int] = None
    op: Optional[str] = None
    witness: Optional[tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.ok

    def describe(self, A: Optional[FiniteAlgebra] = None) -> str:
        if self.ok:
            return "partition function: all five axioms hold"
        w = self.witness
        if A is not None:
            w = tuple(A.names[e] for e in w)
        where = f" for {self.op!r}" if self.op else ""
        return f"axiom {self.axiom} ({AXIOMS[self.axiom]}) fails{where} at {w}"


def dot_table(A: FiniteAlgebra, t: Term) -> np.ndarray:
    """The binary operation ``a.b = t(a, b)`` as an ``n x n`` table."""
    extra = variables(t) - {"x", "y"}
    if extra:
        raise ValueError(f"partition term may only use x and y, found {sorted(extra)}")
    return term_table(A, t, ["x", "y"])


def _first(mask: np.ndarray) -> Optional[tuple[int, ...]]:
    bad = np.argwhere(~mask)
    return tuple(int(v) for v in bad[0]) if len(bad) else None


def verify_partition_function(A: FiniteAlgebra, t: Term) -> PartitionCheck:
    D = dot_table(A, t)
    n = A.size
    a = np.arange(n)
    w = _first(D[a, a] == a)
    if w is not None:
        return PartitionCheck(False, 1, witness=w)
    a, b, c = np.indices((n, n, n))
    w = _first(D[a, D[b, c]] == D[D[a, b], c])
    if w is not None:
        return PartitionCheck(False, 2, witness=w)
    w = _first(D[a, D[b, c]] == D[a, D[c, b]])
    if w is not None:
        return PartitionCheck(False, 3, witness=w)
    ops = [(op, T) for op, T in A.tables.items() if not isinstance(T, int)]
    for op, T in ops:
        grid = np.indices((n,) * (T.ndim + 1))
        args, b = tuple(grid[:-1]), grid[-1]
        w = _first(D[T[args], b] == T[tuple(D[x, b] for x in args)])
        if w is not None:
            return PartitionCheck(False, 4, op, w)
    for op, T in ops:
        grid = np.indices((n,) * (T.ndim + 1))
        args, b = tuple(grid[:-1]), grid[-1]
        acc = b
        for x in args:
            acc = D[acc, x]
        w = _first(D[b, T[args]] == acc)
        if w is not None:
            return PartitionCheck(False, 5, op, w)
    return PartitionCheck(True)


# -- decomposition ---------------------------------------------------------

def plonka_view(A: FiniteAlgebra, t: Term) -> PlonkaAlgebra:
    """Split ``A`` into fibers along the partition function ``t`` and rebuild the system.

    The returned view keeps ``A`` itself as carrier; its ``source`` is the
    recovered direct system, whose Płonka sum is checked to coincide with
    ``A`` element by element.
    """
    check = verify_partition_function(A, t)
    if not check:
        raise DecompositionError("not-a-partition-function", check.describe(A), check.witness or ())
    D = dot_table(A, t)
    n = A.size
    idx = np.arange(n)

    same = (D == idx[:, None]) & (D.T == idx[None, :])
    if not same.diagonal().all():
        raise DecompositionError("not-an-equivalence", "relation is not reflexive", (int(np.argmin(same.diagonal())),))
    if not np.array_equal(same, same.T):
        raise DecompositionError("not-an-equivalence", "relation is not symmetric", _first(same == same.T))
    composed = (same.astype(np.int64) @ same.astype(np.int64)) > 0
    if (composed & ~same).any():
        raise DecompositionError("not-an-equivalence", "relation is not transitive", _first(~composed | same))

    blocks: list[list[int]] = []
    fiber_of = [-1] * n
    for e in range(n):
        if fiber_of[e] == -1:
            block = [int(v) for v in np.flatnonzero(same[e])]
            for v in block:
                fiber_of[v] = len(blocks)
            blocks.append(block)
    local_of = [0] * n
    for block in blocks:
        for l, e in enumerate(block):
            local_of[e] = l
    m = len(blocks)

    # i <= j iff b.a = b for some a in A_i, b in A_j
    order = np.zeros((m, m), dtype=bool)
    for i, j in product(range(m), repeat=2):
        sub = D[np.ix_(blocks[j], blocks[i])]
        order[i, j] = bool((sub == np.asarray(blocks[j])[:, None]).any())
    if not order.diagonal().all():
        raise DecompositionError("not-a-partial-order", "fiber order is not reflexive")
    for i, j in product(range(m), repeat=2):
        if i != j and order[i, j] and order[j, i]:
            raise DecompositionError("not-a-partial-order", "fiber order is not antisymmetric", (i, j))
    for i, j, k in product(range(m), repeat=3):
        if order[i, j] and order[j, k] and not order[i, k]:
            raise DecompositionError("not-a-partial-order", "fiber order is not transitive", (i, j, k))
    join = np.zeros((m, m), dtype=np.int64)
    for i, j in product(range(m), repeat=2):
        upper = [k for k in range(m) if order[i, k] and order[j, k]]
        least = [k for k in upper if all(order[k, u] for u in upper)]
        if not least:
            raise DecompositionError("missing-join", f"fibers {i} and {j} have no least upper bound", (i, j))
        join[i, j] = least[0]
    names = [f"[{A.names[block[0]]}]" for block in blocks]
    try:
        index = Semilattice(join, names)
    except SemilatticeError as exc:
        raise DecompositionError("not-a-semilattice", str(exc), exc.witness) from None

    fibers = []
    for i, block in enumerate(blocks):
        tables = A.subalgebra_tables(block)
        if tables is None:
            raise DecompositionError("fiber-not-closed", f"fiber {i} is not closed under the operations", (i,))
        for op in A.signature.constants():
            # c^{A_i} is the constant pushed into fiber i
            c = int(D[A.tables[op], block[0]])
            if fiber_of[c] != i:
                raise DecompositionError("constant-outside-fiber", f"{op}.b leaves fiber {i}", (i,))
            tables[op] = local_of[c]
        fibers.append(FiniteAlgebra(A.signature, len(block), tables, [A.names[e] for e in block]))

    transitions: dict[tuple[int, int], tuple[int, ...]] = {}
    for i, j in index.strict_pairs():
        anchor = blocks[j][0]
        image = D[np.asarray(blocks[i]), anchor]
        for x, v in zip(blocks[i], image):
            if fiber_of[int(v)] != j:
                raise DecompositionError("transition-leaves-fiber", f"{A.names[x]}.b is not in fiber {j}", (x, anchor))
        for c in blocks[j][1:]:
            other = D[np.asarray(blocks[i]), c]
            if not np.array_equal(other, image):
                x = blocks[i][int(np.argmax(other != image))]
                raise DecompositionError(
                    "choice-dependence", f"{A.names[x]}.b depends on the choice of b in fiber {j}", (x, anchor, c)
                )
        transitions[(i, j)] = tuple(local_of[int(v)] for v in image)

    system = DirectSystem(index, tuple(fibers), transitions)
    try:
        validate_direct_system(system)
    except DirectSystemError as exc:
        raise DecompositionError("invalid-system", str(exc)) from None
    rebuilt = plonka_sum(system)
    tagging = ElementMap(A, rebuilt.carrier, tuple(rebuilt.element(fiber_of[e], local_of[e]) for e in range(n)))
    check = is_homomorphism(tagging)
    if not check:
        raise DecompositionError(
            "reconstruction-mismatch", f"the rebuilt sum differs from A on {check.op!r} at {check.args}", check.args or ()
        )
    return PlonkaAlgebra(A, index, tuple(fiber_of), tuple(local_of), system)


def decompose(A: FiniteAlgebra, t: Term) -> DirectSystem:
    return plonka_view(A, t).source


# -- regular identities ----------------------------------------------------

@dataclass(frozen=True)
class TransferRow:
    identity: Identity
    regular: bool
    fibers_satisfy: bool
    sum_satisfies: bool
    counterexample: Optional[dict[str, int]]
    # None for a single fiber, where losing irregular identities is not expected
    consistent: Optional[bool]


def identity_transfer_report(sys: DirectSystem, identities: Sequence[Identity]) -> list[TransferRow]:
    """For each identity: is it regular, does every fiber satisfy it, does the sum satisfy it."""
    validate_direct_system(sys)
    P = plonka_sum(sys).carrier
    rows = []
    for ident in identities:
        try:
            check_term(ident.lhs, sys.signature)
            check_term(ident.rhs, sys.signature)
        except ValueError as exc:
            raise SignatureMismatch(f"{ident}: {exc}") from None
        regular = is_regular(ident)
        fibers_ok = all(satisfies(A, ident) for A in sys.fibers)
        in_sum = satisfies(P, ident)
        consistent = None
        if len(sys.fibers) >= 2:
            consistent = bool(in_sum) == (regular and fibers_ok)
        rows.append(TransferRow(ident, regular, fibers_ok, in_sum.holds, in_sum.counterexample, consistent))
    return rows
