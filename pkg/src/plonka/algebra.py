"""Finite algebras given by operation tables.

Elements are the indices ``0..n-1``; ``names`` are for display only.  A
k-ary operation is a read-only integer array of shape ``(n,) * k`` and a
constant is a plain ``int``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Mapping, Optional, Sequence

import numpy as np

from .terms import (
    App,
    Identity,
    Signature,
    Term,
    Var,
    check_term,
    enumerate_terms,
    variables,
)

DEFAULT_HOM_BOUND = 12


class SignatureMismatch(ValueError):
    pass


class SizeBoundError(ValueError):
    pass


class FiniteAlgebra:
    __slots__ = ("signature", "size", "names", "tables")

    def __init__(
        self,
        signature: Signature,
        size: int,
        tables: Mapping[str, object],
        names: Optional[Sequence[str]] = None,
    ):
        if size < 1:
            raise ValueError("an algebra needs at least one element")
        if names is None:
            names = [str(k) for k in range(size)]
        names = tuple(str(s) for s in names)
        if len(names) != size:
            raise ValueError(f"expected {size} names, got {len(names)}")
        if len(set(names)) != size:
            raise ValueError("element names must be distinct")
        missing = [s for s in signature if s not in tables]
        extra = [s for s in tables if s not in signature]
        if missing or extra:
            raise ValueError(f"table/signature mismatch: missing {missing}, unexpected {extra}")
        checked: dict[str, object] = {}
        for op in signature:
            k = signature.arity(op)
            if k == 0:
                value = tables[op]
                if isinstance(value, (bool, np.bool_)) or not isinstance(value, (int, np.integer)):
                    raise ValueError(f"constant {op!r} must be an element index")
                value = int(value)
                if not 0 <= value < size:
                    raise ValueError(f"constant {op!r} = {value} out of range")
                checked[op] = value
                continue
            arr = np.array(tables[op], dtype=np.int64)
            if arr.shape != (size,) * k:
                raise ValueError(f"table {op!r} has shape {arr.shape}, expected {(size,) * k}")
            if arr.size and (arr.min() < 0 or arr.max() >= size):
                raise ValueError(f"table {op!r} has entries outside [0, {size})")
            arr.setflags(write=False)
            checked[op] = arr
        object.__setattr__(self, "signature", signature)
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "tables", checked)

    def __setattr__(self, key, value):
        raise AttributeError("FiniteAlgebra is immutable")

    def __repr__(self) -> str:
        return f"<FiniteAlgebra size={self.size} ops={list(self.signature)}>"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteAlgebra):
            return NotImplemented
        return self.names == other.names and self.same_tables(other)

    __hash__ = None  # type: ignore[assignment]

    def same_tables(self, other: "FiniteAlgebra") -> bool:
        if self.signature != other.signature or self.size != other.size:
            return False
        for op in self.signature:
            a, b = self.tables[op], other.tables[op]
            if isinstance(a, int):
                if a != b:
                    return False
            elif not np.array_equal(a, b):
                return False
        return True

    def apply(self, op: str, *args: int) -> int:
        table = self.tables[op]
        if isinstance(table, int):
            if args:
                raise ValueError(f"constant {op!r} takes no arguments")
            return table
        return int(table[args])

    def index(self, name: str) -> int:
        return self.names.index(name)

    def relabel(self, perm: Sequence[int], names: Optional[Sequence[str]] = None) -> "FiniteAlgebra":
        """The isomorphic copy in which old element ``e`` becomes ``perm[e]``."""
        perm = np.asarray(perm, dtype=np.int64)
        inv = np.empty_like(perm)
        inv[perm] = np.arange(self.size)
        tables: dict[str, object] = {}
        for op, table in self.tables.items():
            if isinstance(table, int):
                tables[op] = int(perm[table])
            else:
                tables[op] = perm[table[np.ix_(*([inv] * table.ndim))]]
        if names is None:
            names = [self.names[e] for e in inv]
        return FiniteAlgebra(self.signature, self.size, tables, names)

    def subalgebra_tables(self, members: Sequence[int]) -> dict[str, object] | None:
        """Tables restricted to ``members`` (in the given order), or None if not closed.

        Constants are left out; callers decide how to interpret them.
        """
        pos = {e: k for k, e in enumerate(members)}
        m = np.asarray(members, dtype=np.int64)
        out: dict[str, object] = {}
        for op, table in self.tables.items():
            if isinstance(table, int):
                continue
            sub = table[np.ix_(*([m] * table.ndim))]
            try:
                out[op] = np.vectorize(pos.__getitem__, otypes=[np.int64])(sub) if sub.size else sub
            except KeyError:
                return None
        return out


@dataclass(frozen=True)
class ElementMap:
    """A total function between the universes of two finite algebras."""

    source: FiniteAlgebra
    target: FiniteAlgebra
    map: tuple[int, ...]

    def __post_init__(self):
        m = tuple(int(v) for v in self.map)
        if len(m) != self.source.size:
            raise ValueError(f"map has length {len(m)}, source has {self.source.size} elements")
        if any(not 0 <= v < self.target.size for v in m):
            raise ValueError("map values must lie in the target universe")
        object.__setattr__(self, "map", m)

    def __call__(self, e: int) -> int:
        return self.map[e]

    def then(self, other: "ElementMap") -> "ElementMap":
        """``other`` after ``self``."""
        return ElementMap(self.source, other.target, tuple(other.map[v] for v in self.map))

    @classmethod
    def identity(cls, algebra: FiniteAlgebra) -> "ElementMap":
        return cls(algebra, algebra, tuple(range(algebra.size)))

    def is_bijective(self) -> bool:
        return self.source.size == self.target.size and len(set(self.map)) == self.source.size

    def inverse(self) -> "ElementMap":
        if not self.is_bijective():
            raise ValueError("map is not a bijection")
        inv = [0] * self.source.size
        for a, b in enumerate(self.map):
            inv[b] = a
        return ElementMap(self.target, self.source, tuple(inv))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ElementMap):
            return NotImplemented
        return (
            self.map == other.map
            and self.source.same_tables(other.source)
            and self.target.same_tables(other.target)
        )

    __hash__ = None  # type: ignore[assignment]


# -- evaluation ------------------------------------------------------------

def _require_signature(a: Signature, b: Signature) -> None:
    if a != b:
        raise SignatureMismatch(f"signatures differ: {a!r} vs {b!r}")


def evaluate(A: FiniteAlgebra, t: Term, assignment: Mapping[str, int]) -> int:
    if isinstance(t, Var):
        try:
            return int(assignment[t.name])
        except KeyError:
            raise KeyError(f"variable {t.name!r} is not assigned") from None
    if t.op not in A.signature:
        raise SignatureMismatch(f"operation {t.op!r} is not in the algebra's signature")
    if A.signature.arity(t.op) != len(t.args):
        raise SignatureMismatch(f"{t.op!r} applied to {len(t.args)} argument(s)")
    return A.apply(t.op, *(evaluate(A, a, assignment) for a in t.args))


def term_table(A: FiniteAlgebra, t: Term, vars: Sequence[str]) -> np.ndarray:
    """Values of ``t`` over every assignment to ``vars``, as an array of shape ``(n,) * len(vars)``.

    Axis ``k`` ranges over the value of ``vars[k]``; row-major order is
    lexicographic order on assignments.
    """
    try:
        check_term(t, A.signature)
    except ValueError as exc:
        raise SignatureMismatch(str(exc)) from None
    missing = variables(t) - set(vars)
    if missing:
        raise KeyError(f"unassigned variable(s): {sorted(missing)}")
    shape = (A.size,) * len(vars)
    grids = dict(zip(vars, np.indices(shape, dtype=np.int64))) if vars else {}

    def go(s: Term) -> np.ndarray:
        if isinstance(s, Var):
            return grids[s.name]
        table = A.tables[s.op]
        if isinstance(table, int):
            return np.full(shape, table, dtype=np.int64)
        return table[tuple(go(a) for a in s.args)]

    return go(t)


@dataclass(frozen=True)
class Satisfaction:
    holds: bool
    counterexample: Optional[dict[str, int]] = None
    lhs_value: Optional[int] = None
    rhs_value: Optional[int] = None

    def __bool__(self) -> bool:
        return self.holds


def satisfies(A: FiniteAlgebra, identity: Identity) -> Satisfaction:
    """Check ``identity`` under every assignment; report the lexicographically first failure."""
    vars = identity.variables()
    lhs = term_table(A, identity.lhs, vars)
    rhs = term_table(A, identity.rhs, vars)
    bad = np.argwhere(lhs != rhs)
    if len(bad) == 0:
        return Satisfaction(True)
    point = tuple(int(v) for v in bad[0])
    return Satisfaction(False, dict(zip(vars, point)), int(lhs[point]), int(rhs[point]))


# -- homomorphisms ---------------------------------------------------------

@dataclass(frozen=True)
class HomCheck:
    holds: bool
    op: Optional[str] = None
    args: Optional[tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.holds


def is_homomorphism(m: ElementMap) -> HomCheck:
    A, B = m.source, m.target
    _require_signature(A.signature, B.signature)
    f = np.asarray(m.map, dtype=np.int64)
    for op, table in A.tables.items():
        target = B.tables[op]
        if isinstance(table, int):
            if f[table] != target:
                return HomCheck(False, op, ())
            continue
        k = table.ndim
        lhs = f[table]
        rhs = target[np.ix_(*([f] * k))]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            return HomCheck(False, op, tuple(int(v) for v in bad[0]))
    return HomCheck(True)


class _Tables:
    """Plain-list view of an algebra's tables, for tight Python loops."""

    def __init__(self, A: FiniteAlgebra):
        self.constants = {op: t for op, t in A.tables.items() if isinstance(t, int)}
        self.ops = [(op, t.ndim, t.tolist()) for op, t in A.tables.items() if not isinstance(t, int)]


def _lookup(table, args):
    for a in args:
        table = table[a]
    return table


def _invariants(A: FiniteAlgebra) -> list[tuple]:
    """Per-element data preserved by every isomorphism."""
    cols = []
    for op, t in A.tables.items():
        if isinstance(t, int):
            cols.append(np.arange(A.size) == t)
        elif t.ndim == 1:
            cols.append(t == np.arange(A.size))
            cols.append(t[t] == np.arange(A.size))
        elif t.ndim == 2:
            idx = np.arange(A.size)
            cols.append(t[idx, idx] == idx)
            cols.append((t == idx[:, None]).sum(axis=1))
            cols.append((t == idx[None, :]).sum(axis=0))
            cols.append((t == idx[:, None]).sum(axis=0))
    return [tuple(int(c[e]) for c in cols) for e in range(A.size)]


def _search(A: FiniteAlgebra, B: FiniteAlgebra, injective: bool) -> Iterator[tuple[int, ...]]:
    """Backtracking over partial maps A -> B, in lexicographic order of the map.

    Every tuple whose arguments are all mapped forces the image of its value;
    conflicts prune the branch.
    """
    ta, tb = _Tables(A), _Tables(B)
    n = A.size
    start = [-1] * n
    for op, c in ta.constants.items():
        v = tb.constants[op]
        if start[c] not in (-1, v):
            return
        start[c] = v

    if injective:
        inv_a, inv_b = _invariants(A), _invariants(B)
        candidates = [[v for v in range(B.size) if inv_b[v] == inv_a[e]] for e in range(n)]
    else:
        candidates = [list(range(B.size))] * n

    def propagate(f: list[int], used: set[int], queue: list[int]) -> bool:
        while queue:
            e = queue.pop()
            assigned = [x for x in range(n) if f[x] >= 0]
            for op, k, table in ta.ops:
                btable = _tables_b[op]
                for args in product(assigned, repeat=k):
                    if e not in args:
                        continue
                    r = _lookup(table, args)
                    img = _lookup(btable, [f[a] for a in args])
                    if f[r] == -1:
                        if injective and (img in used or img not in cand_sets[r]):
                            return False
                        f[r] = img
                        used.add(img)
                        queue.append(r)
                    elif f[r] != img:
                        return False
        return True

    _tables_b = {op: t for op, _, t in tb.ops}
    cand_sets = [set(c) for c in candidates]

    f0 = list(start)
    used0 = {v for v in f0 if v >= 0}
    if injective:
        if len(used0) != sum(1 for v in f0 if v >= 0):
            return
        if any(v >= 0 and v not in cand_sets[e] for e, v in enumerate(f0)):
            return
    if not propagate(f0, used0, [e for e in range(n) if f0[e] >= 0]):
        return

    def dfs(f: list[int], used: set[int]) -> Iterator[tuple[int, ...]]:
        try:
            e = f.index(-1)
        except ValueError:
            yield tuple(f)
            return
        for v in candidates[e]:
            if injective and v in used:
                continue
            g = list(f)
            g[e] = v
            u = used | {v}
            if propagate(g, u, [e]):
                yield from dfs(g, u)

    yield from dfs(f0, used0)


def iter_homomorphisms(A: FiniteAlgebra, B: FiniteAlgebra) -> Iterator[ElementMap]:
    _require_signature(A.signature, B.signature)
    for m in _search(A, B, injective=False):
        yield ElementMap(A, B, m)


def enumerate_homomorphisms(
    A: FiniteAlgebra, B: FiniteAlgebra, bound: int = DEFAULT_HOM_BOUND
) -> list[ElementMap]:
    """All homomorphisms ``A -> B`` in lexicographic order of their maps."""
    _require_signature(A.signature, B.signature)
    if A.size > bound:
        raise SizeBoundError(f"source has {A.size} elements, bound is {bound}")
    return list(iter_homomorphisms(A, B))


def iter_isomorphisms(A: FiniteAlgebra, B: FiniteAlgebra) -> Iterator[ElementMap]:
    _require_signature(A.signature, B.signature)
    if A.size != B.size:
        return
    for m in _search(A, B, injective=True):
        yield ElementMap(A, B, m)


def find_isomorphism(A: FiniteAlgebra, B: FiniteAlgebra) -> Optional[ElementMap]:
    if A.signature != B.signature or A.size != B.size:
        return None
    for m in iter_isomorphisms(A, B):
        # a bijective homomorphism of finite algebras has a homomorphic inverse
        if is_homomorphism(m) and is_homomorphism(m.inverse()):
            return m
    return None


def find_irregularity_witness(A: FiniteAlgebra, max_depth: int) -> Optional[Term]:
    """First term ``t(x, y)`` containing both variables with ``t(u, v) = u`` throughout ``A``."""
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")
    xs = np.indices((A.size, A.size))[0]
    for t in enumerate_terms(A.signature, ["x", "y"], max_depth):
        if variables(t) != {"x", "y"}:
            continue
        if np.array_equal(term_table(A, t, ["x", "y"]), xs):
            return t
    return None
