"""Finite join-semilattices given by their join table."""
from __future__ import annotations

from itertools import permutations, product
from typing import Iterator, Optional, Sequence

import numpy as np


class SemilatticeError(ValueError):
    """A join table that is not a semilattice.

    ``law`` names the failing law and ``witness`` is the first failing
    pair or triple of indices.
    """

    def __init__(self, law: str, witness: tuple[int, ...]):
        super().__init__(f"{law} fails at {witness}")
        self.law = law
        self.witness = witness


class Semilattice:
    __slots__ = ("size", "join", "names", "leq", "bottom", "top")

    def __init__(self, join, names: Optional[Sequence[str]] = None):
        table = np.array(join, dtype=np.int64)
        n = len(table)
        if n < 1 or table.shape != (n, n):
            raise ValueError("join table must be a non-empty square table")
        if table.min() < 0 or table.max() >= n:
            raise ValueError(f"join table entries must lie in [0, {n})")
        if names is None:
            names = [str(k) for k in range(n)]
        names = tuple(str(s) for s in names)
        if len(names) != n or len(set(names)) != n:
            raise ValueError("semilattice needs one distinct name per element")
        _check_laws(table)
        table.setflags(write=False)
        idx = np.arange(n)
        leq = table == idx[None, :]  # a <= b iff a v b = b
        leq.setflags(write=False)
        below_all = [a for a in range(n) if leq[a].all()]
        above_all = [a for a in range(n) if leq[:, a].all()]
        for key, value in (
            ("size", n),
            ("join", table),
            ("names", names),
            ("leq", leq),
            ("bottom", below_all[0] if below_all else None),
            ("top", above_all[0]),
        ):
            object.__setattr__(self, key, value)

    def __setattr__(self, key, value):
        raise AttributeError("Semilattice is immutable")

    def __repr__(self) -> str:
        return f"<Semilattice {list(self.names)} join={self.join.tolist()}>"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Semilattice):
            return NotImplemented
        return self.names == other.names and np.array_equal(self.join, other.join)

    __hash__ = None  # type: ignore[assignment]

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b])

    def lt(self, a: int, b: int) -> bool:
        return a != b and bool(self.leq[a, b])

    def join_all(self, items: Sequence[int]) -> int:
        it = iter(items)
        acc = next(it)
        for x in it:
            acc = int(self.join[acc, x])
        return int(acc)

    def strict_pairs(self) -> list[tuple[int, int]]:
        """All ``(i, j)`` with ``i < j``, in lexicographic order."""
        return [(i, j) for i in range(self.size) for j in range(self.size) if self.lt(i, j)]

    def covers(self) -> list[tuple[int, int]]:
        return [
            (i, j)
            for i, j in self.strict_pairs()
            if not any(self.lt(i, k) and self.lt(k, j) for k in range(self.size))
        ]

    def linear_extension(self) -> list[int]:
        """Indices sorted so that every element comes after everything below it."""
        return sorted(range(self.size), key=lambda a: (int(self.leq[:, a].sum()), a))


def _check_laws(t: np.ndarray) -> None:
    n = len(t)
    for a in range(n):
        if t[a, a] != a:
            raise SemilatticeError("idempotence", (a,))
    for a, b in product(range(n), repeat=2):
        if t[a, b] != t[b, a]:
            raise SemilatticeError("commutativity", (a, b))
    for a, b, c in product(range(n), repeat=3):
        if t[a, t[b, c]] != t[t[a, b], c]:
            raise SemilatticeError("associativity", (a, b, c))


def validate_semilattice(join, names: Optional[Sequence[str]] = None) -> Semilattice:
    return Semilattice(join, names)


def chain(n: int, names: Optional[Sequence[str]] = None) -> Semilattice:
    return Semilattice([[max(a, b) for b in range(n)] for a in range(n)], names)


def is_semilattice_homomorphism(S: Semilattice, T: Semilattice, mapping: Sequence[int]) -> bool:
    f = np.asarray(mapping, dtype=np.int64)
    if f.shape != (S.size,) or f.min() < 0 or f.max() >= T.size:
        return False
    return bool(np.array_equal(f[S.join], T.join[np.ix_(f, f)]))


def semilattice_homomorphisms(S: Semilattice, T: Semilattice) -> Iterator[tuple[int, ...]]:
    for f in product(range(T.size), repeat=S.size):
        if is_semilattice_homomorphism(S, T, f):
            yield f


def semilattice_isomorphisms(S: Semilattice, T: Semilattice) -> Iterator[tuple[int, ...]]:
    if S.size != T.size:
        return
    for f in permutations(range(T.size)):
        if is_semilattice_homomorphism(S, T, f):
            yield f


def relabel(S: Semilattice, perm: Sequence[int]) -> Semilattice:
    """Copy of ``S`` in which old index ``a`` becomes ``perm[a]``."""
    perm = np.asarray(perm, dtype=np.int64)
    inv = np.empty_like(perm)
    inv[perm] = np.arange(S.size)
    join = perm[S.join[np.ix_(inv, inv)]]
    return Semilattice(join, [S.names[a] for a in inv])
