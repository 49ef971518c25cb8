"""JSON documents: signatures, algebras, direct and inverse systems, morphisms, identity lists.

Output is deterministic: the same value always serializes to the same bytes,
so ``dumps(load(dumps(x))) == dumps(x)``.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

import numpy as np

from .algebra import FiniteAlgebra
from .semilattice import Semilattice
from .sums import DirectSystem, validate_direct_system
from .systems import (
    DirectSystemMorphism,
    InverseSystem,
    InverseSystemMorphism,
    validate_direct_morphism,
    validate_inverse_morphism,
    validate_inverse_system,
)
from .terms import Identity, Signature, parse_identity


class DocumentError(ValueError):
    """A document that is not valid JSON or does not fit its schema."""


def dumps(doc: Any) -> str:
    return _format(doc, 0) + "\n"


def _format(value: Any, level: int) -> str:
    inner = "  " * (level + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{inner}{json.dumps(k, ensure_ascii=False)}: {_format(v, level + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * level + "}"
    if isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
        items = [inner + _format(v, level + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + "  " * level + "]"
    return json.dumps(value, ensure_ascii=False)


def kind_of(doc: Any) -> str:
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    keys = set(doc)
    if "ops" in keys:
        return "signature"
    if {"size", "tables"} <= keys:
        return "algebra"
    if {"semilattice", "fibers"} <= keys:
        return "system"
    if {"semilattice", "objects"} <= keys:
        return "inverse-system"
    if {"phi", "components"} <= keys:
        return "morphism"
    if "identities" in keys:
        return "identity-list"
    raise DocumentError(f"cannot tell the document kind from keys {sorted(keys)}")


def read(path: Union[str, Path]) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise DocumentError(f"{path}: {exc}") from None


def write(path: Union[str, Path], doc: Any) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")


def _get(doc: dict, key: str) -> Any:
    try:
        return doc[key]
    except (KeyError, TypeError):
        raise DocumentError(f"missing field {key!r}") from None


def _wrap(fn, *args):
    try:
        return fn(*args)
    except DocumentError:
        raise
    except (ValueError, TypeError, KeyError, IndexError) as exc:
        raise DocumentError(str(exc)) from exc


# -- signature -------------------------------------------------------------

def signature_to_doc(sig: Signature) -> dict:
    return {"ops": sig.ops}


def signature_from_doc(doc: Any) -> Signature:
    ops = _get(doc, "ops") if isinstance(doc, dict) and "ops" in doc else doc
    if not isinstance(ops, dict):
        raise DocumentError("signature must map symbols to arities")
    return _wrap(Signature, ops)


# -- algebra ---------------------------------------------------------------

def algebra_to_doc(A: FiniteAlgebra) -> dict:
    tables = {}
    for op, t in A.tables.items():
        tables[op] = t if isinstance(t, int) else t.tolist()
    return {"signature": signature_to_doc(A.signature), "size": A.size, "names": list(A.names), "tables": tables}


def algebra_from_doc(doc: Any) -> FiniteAlgebra:
    sig = signature_from_doc(_get(doc, "signature"))
    size = _get(doc, "size")
    if isinstance(size, bool) or not isinstance(size, int):
        raise DocumentError("size must be an integer")
    tables = _get(doc, "tables")
    if not isinstance(tables, dict):
        raise DocumentError("tables must be an object")
    for op, t in tables.items():
        if op in sig and sig.arity(op) > 0 and not _is_int_array(t):
            raise DocumentError(f"table {op!r} must be nested arrays of integers")
    return _wrap(FiniteAlgebra, sig, size, tables, doc.get("names"))


def _is_int_array(t: Any) -> bool:
    if isinstance(t, list):
        return all(_is_int_array(v) for v in t)
    return isinstance(t, int) and not isinstance(t, bool)


# -- semilattice -----------------------------------------------------------

def semilattice_to_doc(S: Semilattice) -> dict:
    return {"elements": list(S.names), "join": S.join.tolist()}


def semilattice_from_doc(doc: Any) -> Semilattice:
    join = _get(doc, "join")
    if not _is_int_array(join):
        raise DocumentError("join must be a table of integers")
    return _wrap(Semilattice, join, doc.get("elements"))


def _maps(doc: Any) -> list[tuple[int, int, tuple[int, ...]]]:
    out = []
    for entry in _get(doc, "transitions"):
        src, dst, m = _get(entry, "from"), _get(entry, "to"), _get(entry, "map")
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in (src, dst, *m)):
            raise DocumentError("transition fields must be integers")
        out.append((src, dst, tuple(m)))
    return out


# -- direct system ---------------------------------------------------------

def system_to_doc(sys: DirectSystem) -> dict:
    return {
        "semilattice": semilattice_to_doc(sys.index),
        "fibers": [algebra_to_doc(A) for A in sys.fibers],
        "transitions": [{"from": i, "to": j, "map": list(m)} for (i, j), m in sorted(sys.transitions.items())],
    }


def system_from_doc(doc: Any) -> DirectSystem:
    index = semilattice_from_doc(_get(doc, "semilattice"))
    fibers = tuple(algebra_from_doc(f) for f in _get(doc, "fibers"))
    if not fibers:
        raise DocumentError("a system needs at least one fiber")
    transitions = {}
    for i, j, m in _maps(doc):
        if (i, j) in transitions:
            raise DocumentError(f"duplicate transition ({i}, {j})")
        transitions[(i, j)] = m
    return _wrap(validate_direct_system, DirectSystem(index, fibers, transitions))


# -- inverse system --------------------------------------------------------

def inverse_system_to_doc(inv: InverseSystem) -> dict:
    # stored as from = larger index, to = smaller index
    return {
        "semilattice": semilattice_to_doc(inv.index),
        "objects": list(inv.sizes),
        "transitions": [{"from": j, "to": i, "map": list(m)} for (i, j), m in sorted(inv.transitions.items())],
    }


def inverse_system_from_doc(doc: Any) -> InverseSystem:
    index = semilattice_from_doc(_get(doc, "semilattice"))
    sizes = _get(doc, "objects")
    if not _is_int_array(sizes):
        raise DocumentError("objects must be a list of set sizes")
    transitions = {}
    for src, dst, m in _maps(doc):
        if (dst, src) in transitions:
            raise DocumentError(f"duplicate transition ({src}, {dst})")
        transitions[(dst, src)] = m
    return _wrap(validate_inverse_system, InverseSystem(index, tuple(sizes), transitions))


# -- morphisms -------------------------------------------------------------

def morphism_to_doc(m: Union[DirectSystemMorphism, InverseSystemMorphism]) -> dict:
    return {"phi": list(m.phi), "components": [{"map": list(c)} for c in m.components]}


def morphism_from_doc(doc: Any, source, target):
    phi = _get(doc, "phi")
    comps = [_get(c, "map") for c in _get(doc, "components")]
    if not _is_int_array(phi) or not all(_is_int_array(c) for c in comps):
        raise DocumentError("phi and component maps must be integer lists")
    if isinstance(source, DirectSystem):
        return _wrap(validate_direct_morphism, DirectSystemMorphism(source, target, phi, comps))
    return _wrap(validate_inverse_morphism, InverseSystemMorphism(source, target, phi, comps))


# -- identity lists --------------------------------------------------------

def identities_to_doc(identities: list[Identity]) -> dict:
    return {"identities": [str(i) for i in identities]}


def identities_from_doc(doc: Any, sig: Signature) -> list[Identity]:
    items = _get(doc, "identities")
    if not isinstance(items, list) or not all(isinstance(s, str) for s in items):
        raise DocumentError("identities must be a list of strings")
    return [_wrap(parse_identity, s, sig) for s in items]


def load_any(doc: Any):
    """Parse and validate a document of any standalone kind; returns ``(kind, value)``."""
    kind = kind_of(doc)
    if kind == "signature":
        return kind, signature_from_doc(doc)
    if kind == "algebra":
        return kind, algebra_from_doc(doc)
    if kind == "system":
        return kind, system_from_doc(doc)
    if kind == "inverse-system":
        return kind, inverse_system_from_doc(doc)
    if kind == "identity-list":
        if "signature" not in doc:
            raise DocumentError("a standalone identity list needs a signature")
        sig = signature_from_doc(doc["signature"])
        return kind, identities_from_doc(doc, sig)
    raise DocumentError("morphisms are validated against their source and target systems")


def to_doc(value) -> dict:
    if isinstance(value, Signature):
        return signature_to_doc(value)
    if isinstance(value, FiniteAlgebra):
        return algebra_to_doc(value)
    if isinstance(value, DirectSystem):
        return system_to_doc(value)
    if isinstance(value, InverseSystem):
        return inverse_system_to_doc(value)
    if isinstance(value, (DirectSystemMorphism, InverseSystemMorphism)):
        return morphism_to_doc(value)
    raise TypeError(f"no document form for {type(value).__name__}")
