"""Seeded random direct systems of Boolean algebras and random morphisms between them."""
from __future__ import annotations

import random
from functools import lru_cache
from itertools import product
from typing import Optional

from .algebra import FiniteAlgebra, enumerate_homomorphisms
from .semilattice import Semilattice, SemilatticeError, semilattice_homomorphisms
from .stone import primal_powerset_algebra
from .sums import DirectSystem, direct_system_violations, validate_direct_system
from .systems import DirectSystemMorphism, preserves_bottom, validate_direct_morphism

INDEX_NAMES = "ijklmnop"
FIBER_SIZES = (2, 4, 8)


@lru_cache(maxsize=None)
def semilattice_catalog(n: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Every join table on ``{0, .., n-1}`` that has a bottom element."""
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    found = []
    for values in product(range(n), repeat=len(pairs)):
        table = [[a if a == b else 0 for b in range(n)] for a in range(n)]
        for (a, b), v in zip(pairs, values):
            table[a][b] = table[b][a] = v
        try:
            S = Semilattice(table)
        except SemilatticeError:
            continue
        if S.bottom is not None:
            found.append(tuple(tuple(row) for row in table))
    return tuple(found)


def random_boolean_algebra(rng: random.Random, size: int) -> FiniteAlgebra:
    """A powerset algebra of the given size (a power of two) with shuffled element labels."""
    n = size.bit_length() - 1
    if size < 1 or 2**n != size:
        raise ValueError(f"no Boolean algebra has {size} elements")
    base = primal_powerset_algebra(n)
    perm = list(range(size))
    rng.shuffle(perm)
    return base.relabel(perm)


def _compose_along_covers(index: Semilattice, cover_maps: dict) -> dict:
    """Extend maps given on covers to every strict pair, composing along a chosen path."""
    out = dict(cover_maps)
    for i in reversed(index.linear_extension()):
        for j in index.linear_extension():
            if not index.lt(i, j) or (i, j) in out:
                continue
            k = next(k for (a, k) in sorted(cover_maps) if a == i and index.le(k, j))
            first, rest = cover_maps[(i, k)], out[(k, j)]
            out[(i, j)] = tuple(rest[v] for v in first)
    return out


def gen_random_system(seed: int, fiber_count: int, fiber_size: int) -> DirectSystem:
    """A random direct system of Boolean algebras; the same arguments give the same system."""
    if fiber_size not in FIBER_SIZES:
        raise ValueError("fiber_size must be 2, 4 or 8")
    if not 1 <= fiber_count <= 3:
        raise ValueError("fiber_count must be between 1 and 3")
    rng = random.Random(seed)
    index = Semilattice(rng.choice(semilattice_catalog(fiber_count)), INDEX_NAMES[:fiber_count])
    fibers = tuple(random_boolean_algebra(rng, fiber_size) for _ in range(fiber_count))
    covers = index.covers()
    homs = {(i, j): enumerate_homomorphisms(fibers[i], fibers[j]) for i, j in covers}
    for _ in range(1000):
        chosen = {c: rng.choice(homs[c]).map for c in covers}
        sys = DirectSystem(index, fibers, _compose_along_covers(index, chosen))
        if not direct_system_violations(sys):
            return sys
    raise RuntimeError("could not sample a coherent system")  # pragma: no cover


def corpus_system(seed: int) -> DirectSystem:
    """Member ``seed`` of the standard test corpus: 1-3 fibers of size 2, 4 or 8."""
    return gen_random_system(seed, 1 + seed % 3, (2, 4, 8)[(seed // 3) % 3])


def random_morphism(
    source: DirectSystem, target: DirectSystem, rng: random.Random
) -> Optional[DirectSystemMorphism]:
    """A randomly chosen valid morphism ``source -> target``, or None if there is none."""
    I, J = source.index, target.index
    phis = [phi for phi in semilattice_homomorphisms(I, J) if preserves_bottom(source, target, phi)]
    rng.shuffle(phis)
    order = I.linear_extension()
    for phi in phis:
        comps: dict[int, tuple[int, ...]] = {}

        def fits(i: int, f: tuple[int, ...]) -> bool:
            for k, g in comps.items():
                for lo, hi, flo, fhi in ((k, i, g, f), (i, k, f, g)):
                    if I.lt(lo, hi):
                        p = source.transition(lo, hi)
                        q = target.transition(phi[lo], phi[hi])
                        if any(fhi[p[a]] != q[flo[a]] for a in range(len(p))):
                            return False
            return True

        def search(pos: int) -> bool:
            if pos == len(order):
                return True
            i = order[pos]
            cands = [h.map for h in enumerate_homomorphisms(source.fibers[i], target.fibers[phi[i]])]
            rng.shuffle(cands)
            for f in cands:
                if fits(i, f):
                    comps[i] = f
                    if search(pos + 1):
                        return True
                    del comps[i]
            return False

        if search(0):
            m = DirectSystemMorphism(source, target, phi, tuple(comps[i] for i in range(I.size)))
            return validate_direct_morphism(m)
    return None
