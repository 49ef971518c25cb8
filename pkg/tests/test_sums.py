from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from plonka.algebra import FiniteAlgebra, find_isomorphism, satisfies
from plonka.fixtures import BA, IRREGULAR_DUALS, absorption, b2, b4, boolean_laws, ex22, p22
from plonka.generate import corpus_system
from plonka.semilattice import Semilattice, chain
from plonka.sums import (
    DecompositionError,
    DirectSystem,
    DirectSystemError,
    decompose,
    direct_system_violations,
    dot_table,
    identity_transfer_report,
    plonka_sum,
    plonka_view,
    validate_direct_system,
    verify_partition_function,
)
from plonka.systems import find_system_isomorphism
from plonka.terms import Signature, parse_identity, parse_term


def single(A):
    return DirectSystem(chain(1), (A,), {})


def kinds(sys):
    return {v.kind for v in direct_system_violations(sys)}


# -- validation ------------------------------------------------------------

def test_ex22_is_valid():
    assert validate_direct_system(ex22()) is not None


def test_collapsing_transition_is_not_a_homomorphism():
    S = ex22()
    bad = DirectSystem(S.index, S.fibers, {(0, 1): (0, 0, 0, 3)})
    with pytest.raises(DirectSystemError) as info:
        validate_direct_system(bad)
    assert "non-homomorphism" in {v.kind for v in info.value.violations}


def test_single_fiber_system_is_valid():
    validate_direct_system(single(b4()))


def test_missing_transition():
    S = ex22()
    assert "missing-transition" in kinds(DirectSystem(S.index, S.fibers, {}))


def test_transition_on_incomparable_pair_is_extraneous():
    S = ex22()
    assert "extraneous-transition" in kinds(DirectSystem(S.index, S.fibers, {(0, 1): (0, 3, 0, 3), (1, 0): (0, 3, 0, 3)}))


def test_constants_need_a_bottom():
    top_only = Semilattice([[0, 2, 2], [2, 1, 2], [2, 2, 2]])
    maps = {(0, 2): (0, 1), (1, 2): (0, 1)}
    assert "missing-bottom" in kinds(DirectSystem(top_only, (b2(), b2(), b2()), maps))


def test_coherence_failure_reports_every_violation():
    S = chain(3)
    A = b4()
    # 0 -> 1 -> 2 composes to (0, 3, 0, 3) but (0, 2) claims the identity
    bad = DirectSystem(S, (A, A, A), {(0, 1): (0, 3, 0, 3), (1, 2): (0, 1, 2, 3), (0, 2): (0, 1, 2, 3), (1, 0): (0,)})
    found = direct_system_violations(bad)
    assert {"coherence", "extraneous-transition"} <= {v.kind for v in found}


def test_mixed_signatures_rejected():
    J = FiniteAlgebra(Signature({"or": 2}), 1, {"or": [[0]]})
    assert "signature" in kinds(DirectSystem(chain(2), (b2(), J), {(0, 1): (0, 0)}))


# -- the sum ---------------------------------------------------------------

def test_example_arithmetic():
    P = p22().carrier
    n = P.index
    assert P.names[P.apply("and", n("a"), n("a'"))] == "0_i"
    assert P.names[P.apply("and", n("a'"), n("b"))] == "0_j"
    assert P.names[P.apply("or", n("a'"), n("b"))] == "b"


def test_constants_live_in_bottom_fiber():
    P = p22()
    one = P.carrier.tables["one"]
    assert P.carrier.names[one] == "1_i"
    assert P.carrier.names[P.carrier.tables["zero"]] == "0_i"
    # one behaves as an i-element: joining with a j-element lands in j
    b = P.carrier.index("b")
    assert P.carrier.names[P.carrier.apply("or", one, b)] == "1_j"


def test_single_fiber_sum_is_the_fiber():
    A = b4()
    P = plonka_sum(single(A)).carrier
    assert P.same_tables(A)


def _carrier_tables_from_oracle(sys):
    I = sys.index
    bottom = I.bottom
    elems, tabs = oracles.sum_tables(I.join.tolist(), sys.fibers, dict(sys.transitions), bottom)
    pos = {e: k for k, e in enumerate(elems)}
    out = {}
    for op, k in sys.signature.items():
        if k == 0:
            out[op] = pos[tabs[op]]
            continue
        arr = np.empty((len(elems),) * k, dtype=np.int64)
        for args, res in tabs[op].items():
            arr[tuple(pos[a] for a in args)] = pos[res]
        out[op] = arr
    return out


def _assert_matches_oracle(sys):
    P = plonka_sum(sys).carrier
    expected = _carrier_tables_from_oracle(sys)
    for op, k in sys.signature.items():
        if k == 0:
            assert P.tables[op] == expected[op]
        else:
            assert np.array_equal(P.tables[op], expected[op]), op


def test_ex22_sum_matches_defining_formula():
    _assert_matches_oracle(ex22())


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_random_sums_match_defining_formula(seed):
    sys = corpus_system(seed)
    if sum(A.size for A in sys.fibers) <= 16:
        _assert_matches_oracle(sys)


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_fiber_law_and_restriction(seed):
    sys = corpus_system(seed)
    P = plonka_sum(sys)
    A = P.carrier
    I = sys.index
    for op, k in sys.signature.items():
        if k == 0:
            continue
        for args in product(range(A.size), repeat=k):
            expected = I.join_all([P.fiber_of[a] for a in args])
            assert P.fiber_of[A.apply(op, *args)] == expected
    for i, F in enumerate(sys.fibers):
        sub = A.subalgebra_tables(P.members(i))
        assert sub is not None
        for op, k in F.signature.items():
            if k:
                assert np.array_equal(sub[op], F.tables[op])


# -- partition functions ---------------------------------------------------

def test_absorption_is_a_partition_function_on_p22():
    A = p22().carrier
    t = absorption()
    assert verify_partition_function(A, t)
    assert oracles.partition_axioms(A, dot_table(A, t).tolist()) == 0


def test_absorption_on_b4_is_projection():
    A = b4()
    assert verify_partition_function(A, absorption())
    assert np.array_equal(dot_table(A, absorption()), np.repeat(np.arange(4)[:, None], 4, axis=1))


def test_meet_is_not_a_partition_function_on_b4():
    A = b4()
    check = verify_partition_function(A, parse_term("and(x, y)", BA))
    assert not check
    assert check.axiom == 4 and check.op == "not"
    # not(0).b = b but not(0.b) = 1, first at b = 0
    assert check.witness[:2] == (0, 0)
    assert oracles.partition_axioms(A, dot_table(A, parse_term("and(x, y)", BA)).tolist()) == 4


def test_dot_table_rejects_other_variables():
    with pytest.raises(ValueError):
        dot_table(b4(), parse_term("and(x, z)", BA))


TERMS = ["x", "y", "and(x, y)", "or(x, y)", "and(x, or(x, y))", "or(x, and(x, y))", "and(y, or(y, x))", "not(x)", "zero"]


@pytest.mark.parametrize("text", TERMS)
@pytest.mark.parametrize("build", [b2, b4, lambda: p22().carrier], ids=["b2", "b4", "p22"])
def test_partition_axioms_agree_with_oracle(build, text):
    A = build()
    t = parse_term(text, BA)
    got = verify_partition_function(A, t)
    expected = oracles.partition_axioms(A, dot_table(A, t).tolist())
    assert (got.axiom or 0) == expected


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_witness_gives_partition_function_on_random_sums(seed):
    A = plonka_sum(corpus_system(seed)).carrier
    assert verify_partition_function(A, absorption())


# -- decomposition ---------------------------------------------------------

def test_decompose_p22_recovers_ex22():
    D = decompose(p22().carrier, absorption())
    assert D.index.size == 2 and D.index.le(0, 1)
    assert [F.names for F in D.fibers] == [("0_i", "a", "a'", "1_i"), ("0_j", "b", "b'", "1_j")]
    assert D.transition(0, 1) == (0, 3, 0, 3)
    assert find_system_isomorphism(D, ex22()) is not None


def test_decompose_b4_is_single_fiber():
    D = decompose(b4(), absorption())
    assert D.index.size == 1
    assert D.fibers[0].same_tables(b4())


def test_view_tags_the_original_carrier():
    A = p22().carrier
    view = plonka_view(A, absorption())
    assert view.carrier is A
    assert view.fiber_of == (0, 0, 0, 0, 1, 1, 1, 1)


def test_decompose_rejects_non_partition_term():
    with pytest.raises(DecompositionError):
        decompose(b4(), parse_term("and(x, y)", BA))


@given(st.integers(0, 10_000), st.permutations(range(8)))
@settings(max_examples=25, deadline=None)
def test_decompose_of_relabelled_sum(seed, perm):
    sys = corpus_system(seed)
    A = plonka_sum(sys).carrier
    if A.size == 8:
        A = A.relabel(perm)
    D = decompose(A, absorption())
    assert find_system_isomorphism(D, sys) is not None
    assert find_isomorphism(plonka_sum(D).carrier, A) is not None


# -- regular identities ----------------------------------------------------

def test_transfer_report_on_ex22():
    rows = identity_transfer_report(ex22(), boolean_laws())
    assert len(rows) == 12
    assert all(r.consistent for r in rows)
    assert all(r.fibers_satisfy for r in rows)
    for r in rows:
        assert r.sum_satisfies == r.regular
    assert [r.regular for r in rows].count(False) == 2


def test_transfer_report_on_dual_forms():
    rows = identity_transfer_report(ex22(), [parse_identity(s, BA) for s in IRREGULAR_DUALS])
    assert all(not r.regular and r.fibers_satisfy and not r.sum_satisfies and r.consistent for r in rows)


def test_transfer_report_absorption_row():
    (row,) = identity_transfer_report(ex22(), [parse_identity("and(x, or(x, y)) = x", BA)])
    assert (row.regular, row.fibers_satisfy, row.sum_satisfies, row.consistent) == (False, True, False, True)
    P = p22().carrier
    assert not satisfies(P, row.identity)


def test_transfer_single_fiber_not_applicable():
    (row,) = identity_transfer_report(single(b4()), [parse_identity("and(x, or(x, y)) = x", BA)])
    assert row.sum_satisfies and row.consistent is None


def test_transfer_signature_mismatch():
    from plonka.algebra import SignatureMismatch

    with pytest.raises(SignatureMismatch):
        identity_transfer_report(ex22(), [parse_identity("f(x) = x", Signature({"f": 1}))])


@given(st.integers(0, 10_000))
@settings(max_examples=20, deadline=None)
def test_transfer_is_consistent_on_random_systems(seed):
    sys = corpus_system(seed)
    rows = identity_transfer_report(sys, boolean_laws() + [parse_identity(s, BA) for s in IRREGULAR_DUALS])
    assert all(r.consistent is not False for r in rows)
