import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from plonka import documents as docs
from plonka.fixtures import BA, b4, data_path, ex22, fold, golden_documents, p22
from plonka.generate import corpus_system
from plonka.stone import dualize_direct_morphism, dualize_direct_system
from plonka.sums import plonka_sum


def byte_round_trip(tmp_path, doc, name="doc.json"):
    """write, read, rebuild the value, write again; returns both byte strings"""
    first = tmp_path / name
    docs.write(first, doc)
    loaded = docs.read(first)
    kind, value = docs.load_any(loaded)
    if kind == "identity-list":
        rebuilt = {"signature": loaded["signature"], **docs.identities_to_doc(value)}
    else:
        rebuilt = docs.to_doc(value)
    again = tmp_path / ("again-" + name)
    docs.write(again, rebuilt)
    return first.read_bytes(), again.read_bytes()


@pytest.mark.parametrize("name", sorted(golden_documents()))
def test_shipped_data_matches_fixtures(name):
    assert data_path(name).read_text(encoding="utf-8") == docs.dumps(golden_documents()[name])


@pytest.mark.parametrize("name", sorted(golden_documents()))
def test_fixture_documents_round_trip(tmp_path, name):
    a, b = byte_round_trip(tmp_path, golden_documents()[name], name)
    assert a == b


def test_algebra_schema():
    doc = docs.algebra_to_doc(b4())
    assert doc["signature"] == {"ops": {"and": 2, "or": 2, "not": 1, "zero": 0, "one": 0}}
    assert doc["size"] == 4 and doc["names"] == ["0", "a", "a'", "1"]
    assert doc["tables"]["not"] == [3, 2, 1, 0] and doc["tables"]["one"] == 3
    assert docs.algebra_from_doc(doc) == b4()


def test_system_schema():
    doc = docs.system_to_doc(ex22())
    assert doc["semilattice"] == {"elements": ["i", "j"], "join": [[0, 1], [1, 1]]}
    assert doc["transitions"] == [{"from": 0, "to": 1, "map": [0, 3, 0, 3]}]


def test_inverse_system_schema():
    doc = docs.inverse_system_to_doc(dualize_direct_system(ex22()))
    assert doc["objects"] == [2, 2]
    assert doc["transitions"] == [{"from": 1, "to": 0, "map": [0, 0]}]
    back = docs.inverse_system_from_doc(doc)
    assert back.transitions == {(0, 1): (0, 0)}


def test_morphism_round_trip(tmp_path):
    m = fold()
    doc = docs.morphism_to_doc(m)
    assert doc == {"phi": [0, 0], "components": [{"map": [0, 3, 0, 3]}, {"map": [0, 1, 2, 3]}]}
    assert docs.morphism_from_doc(doc, ex22(), ex22()) == m
    d = dualize_direct_morphism(m)
    assert docs.morphism_from_doc(docs.morphism_to_doc(d), d.source, d.target) == d


def test_invalid_morphism_document():
    bad = {"phi": [1, 1], "components": [{"map": [0, 1, 2, 3]}, {"map": [0, 1, 2, 3]}]}
    with pytest.raises(docs.DocumentError):
        docs.morphism_from_doc(bad, ex22(), ex22())


def test_identity_list():
    doc = golden_documents()["boolean_laws.json"]
    kind, ids = docs.load_any(doc)
    assert kind == "identity-list" and len(ids) == 12
    assert docs.identities_to_doc(ids)["identities"] == doc["identities"]


def test_lists_of_scalars_stay_inline():
    text = docs.dumps({"a": [[0, 1], [1, 1]], "b": [1, 2]})
    assert text == '{\n  "a": [\n    [0, 1],\n    [1, 1]\n  ],\n  "b": [1, 2]\n}\n'
    assert json.loads(text) == {"a": [[0, 1], [1, 1]], "b": [1, 2]}


@pytest.mark.parametrize(
    "doc",
    [
        [],
        {"nothing": 1},
        {"ops": {"and": -1}},
        {"ops": {"9": 1}},
        {"signature": {"ops": {"f": 1}}, "size": 2, "tables": {"f": [0, 2]}},
        {"signature": {"ops": {"f": 1}}, "size": 2, "tables": {}},
        {"signature": {"ops": {"f": 1}}, "size": 2, "tables": {"f": [0, "1"]}},
        {"semilattice": {"elements": ["i"], "join": [[1]]}, "fibers": []},
        {"semilattice": {"elements": ["i", "j"], "join": [[0, 1], [1, 1]]}, "objects": [2, 2], "transitions": []},
        {"identities": ["and(x, y) = and(y, x)"]},
        {"identities": ["and(x) = x"], "signature": {"ops": {"and": 2}}},
    ],
)
def test_malformed_documents(doc):
    with pytest.raises(docs.DocumentError):
        docs.load_any(doc)


def test_unreadable_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json", encoding="utf-8")
    with pytest.raises(docs.DocumentError):
        docs.read(p)
    with pytest.raises(docs.DocumentError):
        docs.read(tmp_path / "missing.json")


def test_system_validation_failure_keeps_cause():
    doc = docs.system_to_doc(ex22())
    doc["transitions"][0]["map"] = [0, 0, 0, 3]
    with pytest.raises(docs.DocumentError) as info:
        docs.system_from_doc(doc)
    from plonka.sums import DirectSystemError

    assert isinstance(info.value.__cause__, DirectSystemError)


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_generated_documents_round_trip(tmp_path_factory, seed):
    tmp = tmp_path_factory.mktemp("gen")
    S = corpus_system(seed)
    for name, doc in [
        ("sys.json", docs.system_to_doc(S)),
        ("sum.json", docs.algebra_to_doc(plonka_sum(S).carrier)),
        ("inv.json", docs.inverse_system_to_doc(dualize_direct_system(S))),
    ]:
        a, b = byte_round_trip(tmp, doc, name)
        assert a == b
