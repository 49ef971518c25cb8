"""Signatures, terms, identities and the concrete term syntax.

Terms are written ``op(t1, ..., tk)``; nullary operations are written bare
(``one``, not ``one()``).  Any identifier that is not an operation of the
ambient signature is a variable.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Mapping, Sequence, Union

IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")


class TermSyntaxError(ValueError):
    """Malformed term text.  ``position`` is a 0-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ArityError(ValueError):
    def __init__(self, symbol: str, expected: int, got: int):
        super().__init__(f"operation {symbol!r} expects {expected} argument(s), got {got}")
        self.symbol = symbol
        self.expected = expected
        self.got = got


class Signature:
    """An immutable map from operation symbol to arity.

    Symbol order is kept as given; it only matters for serialization.
    """

    __slots__ = ("_ops",)

    def __init__(self, ops: Mapping[str, int]):
        checked = {}
        for name, arity in ops.items():
            if not isinstance(name, str) or not IDENT.fullmatch(name):
                raise ValueError(f"invalid operation symbol {name!r}")
            if isinstance(arity, bool) or not isinstance(arity, int) or arity < 0:
                raise ValueError(f"invalid arity {arity!r} for {name!r}")
            checked[name] = arity
        object.__setattr__(self, "_ops", checked)

    def __setattr__(self, key, value):
        raise AttributeError("Signature is immutable")

    @property
    def ops(self) -> dict[str, int]:
        return dict(self._ops)

    def arity(self, symbol: str) -> int:
        return self._ops[symbol]

    def __contains__(self, symbol: object) -> bool:
        return symbol in self._ops

    def __iter__(self) -> Iterator[str]:
        return iter(self._ops)

    def __len__(self) -> int:
        return len(self._ops)

    def items(self):
        return self._ops.items()

    def constants(self) -> list[str]:
        return [s for s, k in self._ops.items() if k == 0]

    def operations(self, min_arity: int = 0) -> list[str]:
        return [s for s, k in self._ops.items() if k >= min_arity]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Signature):
            return NotImplemented
        return self._ops == other._ops

    def __hash__(self) -> int:
        return hash(frozenset(self._ops.items()))

    def __repr__(self) -> str:
        return f"Signature({self._ops!r})"


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class App:
    op: str
    args: tuple["Term", ...] = ()

    def __str__(self) -> str:
        return format_term(self)


Term = Union[Var, App]


@dataclass(frozen=True)
class Identity:
    lhs: Term
    rhs: Term

    def __str__(self) -> str:
        return f"{format_term(self.lhs)} = {format_term(self.rhs)}"

    def variables(self) -> list[str]:
        return sorted(variables(self.lhs) | variables(self.rhs))


def depth(t: Term) -> int:
    if isinstance(t, Var):
        return 0
    return 1 + max((depth(a) for a in t.args), default=0)


def variables(t: Term) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset((t.name,))
    out: frozenset[str] = frozenset()
    for a in t.args:
        out |= variables(a)
    return out


def is_regular(identity: Identity) -> bool:
    return variables(identity.lhs) == variables(identity.rhs)


def canonical_key(t: Term) -> tuple:
    """Sort key: depth, then symbol (or variable) name, then children."""
    if isinstance(t, Var):
        return (0, t.name, ())
    return (depth(t), t.op, tuple(canonical_key(a) for a in t.args))


def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if not t.args:
        return t.op
    return f"{t.op}({', '.join(format_term(a) for a in t.args)})"


def check_term(t: Term, sig: Signature) -> None:
    """Raise if ``t`` uses an operation outside ``sig`` or with the wrong arity."""
    if isinstance(t, Var):
        if t.name in sig:
            raise ValueError(f"{t.name!r} is an operation symbol, not a variable")
        return
    if t.op not in sig:
        raise ValueError(f"unknown operation {t.op!r}")
    if sig.arity(t.op) != len(t.args):
        raise ArityError(t.op, sig.arity(t.op), len(t.args))
    for a in t.args:
        check_term(a, sig)


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_']*)|(?P<punct>[(),=]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise TermSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = "ident" if m.group("ident") else m.group("punct")
        value = m.group("ident") or m.group("punct")
        tokens.append((kind, value, m.start(kind if kind == "ident" else "punct")))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, sig: Signature):
        self.sig = sig
        self.tokens = _tokenize(text)
        self.i = 0
        if self.tokens[0][0] == "eof":
            raise TermSyntaxError("empty input", 0)

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind: str):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            want = "identifier" if kind == "ident" else repr(kind)
            got = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise TermSyntaxError(f"expected {want}, got {got}", tok[2])
        self.i += 1
        return tok

    def term(self) -> Term:
        _, name, pos = self.take("ident")
        if self.peek()[0] != "(":
            if name in self.sig:
                if self.sig.arity(name) != 0:
                    raise ArityError(name, self.sig.arity(name), 0)
                return App(name)
            return Var(name)
        if name not in self.sig:
            raise TermSyntaxError(f"{name!r} is not an operation of the signature", pos)
        self.take("(")
        args = [self.term()]
        while self.peek()[0] == ",":
            self.take(",")
            args.append(self.term())
        self.take(")")
        if self.sig.arity(name) != len(args):
            raise ArityError(name, self.sig.arity(name), len(args))
        return App(name, tuple(args))

    def end(self):
        self.take("eof")


def parse_term(text: str, sig: Signature) -> Term:
    p = _Parser(text, sig)
    t = p.term()
    p.end()
    return t


def parse_identity(text: str, sig: Signature) -> Identity:
    p = _Parser(text, sig)
    lhs = p.term()
    p.take("=")
    rhs = p.term()
    p.end()
    return Identity(lhs, rhs)


# -- enumeration -----------------------------------------------------------

def enumerate_terms(sig: Signature, vars: Sequence[str], max_depth: int) -> list[Term]:
    """All terms over ``sig`` and ``vars`` of depth at most ``max_depth``, canonically sorted."""
    if max_depth < 0:
        raise ValueError("max_depth must be non-negative")
    for v in vars:
        if v in sig or not IDENT.fullmatch(v):
            raise ValueError(f"invalid variable name {v!r}")
    upto: list[Term] = [Var(v) for v in dict.fromkeys(vars)]
    newest = list(upto)
    for d in range(1, max_depth + 1):
        fresh: list[Term] = []
        for op, k in sig.items():
            if k == 0:
                if d == 1:
                    fresh.append(App(op))
                continue
            newest_ids = {id(t) for t in newest}
            for args in product(upto, repeat=k):
                # exactly depth d: some child has depth d - 1
                if any(id(a) in newest_ids for a in args):
                    fresh.append(App(op, args))
        upto = upto + fresh
        newest = fresh
    return sorted(upto, key=canonical_key)
