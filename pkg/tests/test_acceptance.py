"""Acceptance criteria, one test each, with their time limits.

Run ``pytest tests/test_acceptance.py`` for a PASS/FAIL line per criterion.
"""
import random
import time
from contextlib import contextmanager

import pytest

from plonka import documents as docs
from plonka.algebra import enumerate_homomorphisms, evaluate, find_irregularity_witness, is_homomorphism, satisfies
from plonka.fixtures import (
    BA,
    IRREGULAR_DUALS,
    absorption,
    b2,
    b4,
    boolean_laws,
    ex22,
    golden_documents,
    join_chain2,
    p22,
)
from plonka.generate import corpus_system, gen_random_system, random_morphism
from plonka.semilattice import is_semilattice_homomorphism
from plonka.stone import dualize_direct_morphism, dualize_direct_system, duality_roundtrip_check
from plonka.sums import decompose, identity_transfer_report, plonka_sum, verify_partition_function
from plonka.systems import (
    check_fibre_preservation,
    fibre_map_of_hom,
    find_system_isomorphism,
    roundtrip_equivalence_check,
    sum_of_morphism,
    validate_inverse_morphism,
)
from plonka.terms import enumerate_terms, format_term, parse_identity, parse_term, variables

CORPUS = range(50)


@contextmanager
def within(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.2f}s, limit {seconds}s"


def small_pairs(count, seed, max_carrier=12):
    """Seeded pairs of random Boolean-fiber systems whose sums have at most ``max_carrier`` elements."""
    rng = random.Random(seed)
    shapes = [(k, s) for k in (1, 2, 3) for s in (2, 4, 8) if k * s <= max_carrier]
    out = []
    for _ in range(count):
        pair = []
        for _ in range(2):
            k, s = rng.choice(shapes)
            pair.append(gen_random_system(rng.randrange(10**6), k, s))
        out.append(tuple(pair))
    return out


def composable_pairs(count, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        S, T, U = (corpus_system(rng.randrange(10**4)) for _ in range(3))
        m1, m2 = random_morphism(S, T, rng), random_morphism(T, U, rng)
        if m1 is not None and m2 is not None:
            out.append((m1, m2))
    return out


def test_criterion_01_example_arithmetic():
    with within(1):
        P = plonka_sum(ex22()).carrier
        n = P.index
        assert P.names[P.tables["and"][n("a"), n("a'")]] == "0_i"
        assert P.names[P.tables["and"][n("a'"), n("b")]] == "0_j"


def test_criterion_02_partition_function_axioms():
    with within(1):
        check = verify_partition_function(p22().carrier, absorption())
        assert check.ok, check.describe(p22().carrier)


def test_criterion_03_decomposition_fixture():
    with within(1):
        D = decompose(p22().carrier, absorption())
        assert D.index.size == 2 and D.index.le(0, 1)
        assert [F.size for F in D.fibers] == [4, 4]
        a, one_j = D.fibers[0].index("a"), D.fibers[1].index("1_j")
        assert D.transition(0, 1)[a] == one_j
        assert find_system_isomorphism(D, ex22()) is not None


def test_criterion_04_regular_identity_transfer():
    with within(5):
        ids = boolean_laws()
        rows = identity_transfer_report(ex22(), ids)
        assert len(rows) == 12 and all(r.consistent is True for r in rows)
        for r in rows:
            assert r.sum_satisfies == r.regular
        # the irregular ones: both absorption forms and both complementation laws
        extra = identity_transfer_report(ex22(), [parse_identity(s, BA) for s in IRREGULAR_DUALS])
        irregular = [r for r in rows + extra if not r.regular]
        assert len(irregular) == 4
        assert all(r.fibers_satisfy and not r.sum_satisfies and r.consistent for r in irregular)


def test_criterion_05_homomorphisms_preserve_fibres():
    with within(60):
        P = p22()
        cases = [(P, P)] + [(plonka_sum(S), plonka_sum(T)) for S, T in small_pairs(20, seed=5)]
        total = 0
        for src, dst in cases:
            for h in enumerate_homomorphisms(src.carrier, dst.carrier):
                assert check_fibre_preservation(h, src, dst)
                assert is_semilattice_homomorphism(src.index, dst.index, fibre_map_of_hom(h, src, dst))
                total += 1
        assert total >= 12


def test_criterion_06_functor_round_trips():
    with within(60):
        roundtrip_equivalence_check(ex22(), absorption())
        for seed in CORPUS:
            roundtrip_equivalence_check(corpus_system(seed), absorption())


def test_criterion_07_duality_round_trips():
    with within(60):
        duality_roundtrip_check(ex22())
        for seed in CORPUS:
            duality_roundtrip_check(corpus_system(seed))
        pairs = composable_pairs(20, seed=7)
        for m1, m2 in pairs:
            validate_inverse_morphism(dualize_direct_morphism(m1))
            validate_inverse_morphism(dualize_direct_morphism(m2))
            assert dualize_direct_morphism(m1.then(m2)) == dualize_direct_morphism(m2).then(dualize_direct_morphism(m1))


def _reverifies(A, t):
    if variables(t) != {"x", "y"}:
        return False
    return all(evaluate(A, t, {"x": u, "y": v}) == u for u in range(A.size) for v in range(A.size))


def test_criterion_08_witness_search():
    with within(10):
        for A in (b2(), b4()):
            t = find_irregularity_witness(A, 2)
            assert t is not None and _reverifies(A, t)
        assert find_irregularity_witness(join_chain2(), 3) is None


def test_criterion_09_sums_of_morphisms():
    with within(10):
        rng = random.Random(9)
        done = 0
        while done < 30:
            S, T = corpus_system(rng.randrange(10**4)), corpus_system(rng.randrange(10**4))
            m = random_morphism(S, T, rng)
            if m is None:
                continue
            assert is_homomorphism(sum_of_morphism(m))
            done += 1


def test_criterion_10_format_round_trip(tmp_path):
    documents = dict(golden_documents())
    for seed in CORPUS:
        S = corpus_system(seed)
        documents[f"gen{seed}.json"] = docs.system_to_doc(S)
        documents[f"gen{seed}-dual.json"] = docs.inverse_system_to_doc(dualize_direct_system(S))
    for name, doc in documents.items():
        path = tmp_path / name
        docs.write(path, doc)
        first = path.read_bytes()
        docs.load_any(docs.read(path))
        docs.write(path, docs.read(path))
        assert path.read_bytes() == first, name
    for t in enumerate_terms(BA, ["x", "y"], 2):
        assert parse_term(format_term(t), BA) == t


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
