"""Command-line interface.

Exit status: 0 when the command succeeds or the checked property holds, 1 when
the property fails (a report is printed), 2 for malformed input.
"""
from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import documents as docs
from .algebra import SignatureMismatch, SizeBoundError, enumerate_homomorphisms, find_irregularity_witness, satisfies
from .generate import gen_random_system
from .semilattice import SemilatticeError, is_semilattice_homomorphism
from .stone import NotBoolean, dualize_direct_system, duality_roundtrip_check, primalize_inverse_system
from .sums import DecompositionError, DirectSystemError, identity_transfer_report, plonka_sum, plonka_view
from .systems import (
    InverseSystemError,
    MorphismError,
    RoundTripError,
    check_fibre_preservation,
    fibre_map_of_hom,
    roundtrip_equivalence_check,
)
from .terms import ArityError, TermSyntaxError, format_term, is_regular, parse_identity, parse_term


class Malformed(Exception):
    pass


def _emit(doc, out: Optional[str]) -> None:
    if out:
        docs.write(out, doc)
    else:
        sys.stdout.write(docs.dumps(doc))


def _load(path: str, kind: str):
    doc = docs.read(path)
    found = docs.kind_of(doc)
    if found != kind:
        raise Malformed(f"{path}: expected a {kind} document, got {found}")
    return {
        "signature": docs.signature_from_doc,
        "algebra": docs.algebra_from_doc,
        "system": docs.system_from_doc,
        "inverse-system": docs.inverse_system_from_doc,
    }[kind](doc)


def _names(A, assignment: dict[str, int]) -> str:
    return ", ".join(f"{v}={A.names[e]}" for v, e in assignment.items())


def cmd_validate(args) -> int:
    doc = docs.read(args.file)
    kind = docs.kind_of(doc)
    try:
        if kind == "morphism":
            if not (args.source and args.target):
                raise Malformed("validating a morphism needs --source and --target")
            src = docs.read(args.source)
            dst = docs.read(args.target)
            loaders = {"system": docs.system_from_doc, "inverse-system": docs.inverse_system_from_doc}
            s_kind, t_kind = docs.kind_of(src), docs.kind_of(dst)
            if s_kind != t_kind or s_kind not in loaders:
                raise Malformed("--source and --target must both be direct or both inverse systems")
            docs.morphism_from_doc(doc, loaders[s_kind](src), loaders[t_kind](dst))
        else:
            docs.load_any(doc)
    except docs.DocumentError as exc:
        if isinstance(exc.__cause__, (DirectSystemError, InverseSystemError, MorphismError, SemilatticeError)):
            print(f"invalid {kind}: {exc}")
            return 1
        raise
    print(f"valid {kind}")
    return 0


def cmd_sum(args) -> int:
    _emit(docs.algebra_to_doc(plonka_sum(_load(args.system, "system")).carrier), args.output)
    return 0


def cmd_decompose(args) -> int:
    A = _load(args.algebra, "algebra")
    t = parse_term(args.term, A.signature)
    try:
        view = plonka_view(A, t)
    except DecompositionError as exc:
        print(f"not decomposable by {format_term(t)}: {exc}")
        return 1
    _emit(docs.system_to_doc(view.source), args.output)
    return 0


def cmd_check_id(args) -> int:
    A = _load(args.algebra, "algebra")
    ident = parse_identity(args.identity, A.signature)
    result = satisfies(A, ident)
    if result:
        print(f"holds: {ident}")
        return 0
    print(
        f"fails: {ident}\ncounterexample: {_names(A, result.counterexample)}"
        f" (lhs = {A.names[result.lhs_value]}, rhs = {A.names[result.rhs_value]})"
    )
    return 1


def cmd_regular(args) -> int:
    sig = _load(args.sig, "signature")
    ident = parse_identity(args.identity, sig)
    if is_regular(ident):
        print("regular")
        return 0
    print("irregular")
    return 1


def cmd_witness(args) -> int:
    A = _load(args.algebra, "algebra")
    t = find_irregularity_witness(A, args.depth)
    if t is None:
        print(f"no witness up to depth {args.depth}")
        return 1
    print(format_term(t))
    return 0


def cmd_homs(args) -> int:
    A = _load(args.a, "algebra")
    B = _load(args.b, "algebra")
    homs = enumerate_homomorphisms(A, B, bound=args.bound)
    print(f"{len(homs)} homomorphism(s)")
    if not args.check_fibres:
        for h in homs:
            print(" ".join(f"{A.names[e]}->{B.names[v]}" for e, v in enumerate(h.map)))
        return 0
    src = plonka_sum(_load(args.check_fibres[0], "system"))
    dst = plonka_sum(_load(args.check_fibres[1], "system"))
    if not (src.carrier.same_tables(A) and dst.carrier.same_tables(B)):
        raise Malformed("the algebras are not the Płonka sums of the given systems")
    failures = 0
    for h in homs:
        maps = " ".join(f"{A.names[e]}->{B.names[v]}" for e, v in enumerate(h.map))
        if not check_fibre_preservation(h, src, dst):
            print(f"NOT fibre-preserving: {maps}")
            failures += 1
            continue
        phi = fibre_map_of_hom(h, src, dst)
        ok = is_semilattice_homomorphism(src.index, dst.index, phi)
        failures += not ok
        shown = ", ".join(f"{src.index.names[i]}->{dst.index.names[j]}" for i, j in enumerate(phi))
        print(f"{'ok' if ok else 'BAD phi'} [{shown}]: {maps}")
    return 1 if failures else 0


def cmd_transfer(args) -> int:
    sys_ = _load(args.system, "system")
    doc = docs.read(args.ids)
    if docs.kind_of(doc) != "identity-list":
        raise Malformed(f"{args.ids}: expected an identity list")
    rows = identity_transfer_report(sys_, docs.identities_from_doc(doc, sys_.signature))
    mark = {True: "yes", False: "no", None: "n/a"}
    print(f"{'identity':48} regular fibers sum consistent")
    for r in rows:
        print(
            f"{str(r.identity):48} {mark[r.regular]:7} {mark[r.fibers_satisfy]:6} "
            f"{mark[r.sum_satisfies]:3} {mark[r.consistent]}"
        )
    return 1 if any(r.consistent is False for r in rows) else 0


def cmd_dualize(args) -> int:
    _emit(docs.inverse_system_to_doc(dualize_direct_system(_load(args.system, "system"))), args.output)
    return 0


def cmd_primalize(args) -> int:
    _emit(docs.system_to_doc(primalize_inverse_system(_load(args.inverse_system, "inverse-system"))), args.output)
    return 0


def cmd_roundtrip(args) -> int:
    sys_ = _load(args.system, "system")
    t = parse_term(args.term, sys_.signature)
    try:
        report = roundtrip_equivalence_check(sys_, t)
    except RoundTripError as exc:
        print(f"round trip failed: {exc}")
        return 1
    m = report.system_iso
    print("F(G(S)) ~ S:")
    print("  index: " + ", ".join(f"{m.source.index.names[i]}->{m.target.index.names[j]}" for i, j in enumerate(m.phi)))
    for i, comp in enumerate(m.components):
        A, B = m.source.fibers[i], m.target.fibers[m.phi[i]]
        print(f"  fiber {m.source.index.names[i]}: " + " ".join(f"{A.names[e]}->{B.names[v]}" for e, v in enumerate(comp)))
    h = report.algebra_iso
    print("G(F(A)) ~ A:")
    print("  " + " ".join(f"{h.source.names[e]}->{h.target.names[v]}" for e, v in enumerate(h.map)))
    return 0


def cmd_dual_roundtrip(args) -> int:
    sys_ = _load(args.system, "system")
    try:
        report = duality_roundtrip_check(sys_)
    except RoundTripError as exc:
        print(f"duality round trip failed: {exc}")
        return 1
    print(f"primal(dual(S)) ~ S via index map {list(report.direct_iso.phi)}")
    print(f"dual(primal(X)) ~ X via index map {list(report.inverse_iso.phi)}")
    return 0


def cmd_gen(args) -> int:
    _emit(docs.system_to_doc(gen_random_system(args.seed, args.fibers, args.fiber_size)), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="plonka", description="Płonka sums, partition functions and finite duality.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="validate any document")
    s.add_argument("file")
    s.add_argument("--source", help="source system, for morphism documents")
    s.add_argument("--target", help="target system, for morphism documents")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("sum", help="Płonka sum of a direct system")
    s.add_argument("system")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_sum)

    s = sub.add_parser("decompose", help="recover a direct system from a partition term")
    s.add_argument("algebra")
    s.add_argument("--term", required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("check-id", help="check an identity in an algebra")
    s.add_argument("algebra")
    s.add_argument("identity")
    s.set_defaults(func=cmd_check_id)

    s = sub.add_parser("regular", help="is an identity regular")
    s.add_argument("identity")
    s.add_argument("--sig", required=True)
    s.set_defaults(func=cmd_regular)

    s = sub.add_parser("witness", help="search a term t(x, y) with t(x, y) = x")
    s.add_argument("algebra")
    s.add_argument("--depth", type=int, required=True)
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("homs", help="enumerate homomorphisms A -> B")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--check-fibres", nargs=2, metavar=("SYS_A", "SYS_B"))
    s.add_argument("--bound", type=int, default=12)
    s.set_defaults(func=cmd_homs)

    s = sub.add_parser("transfer", help="regular-identity transfer report")
    s.add_argument("system")
    s.add_argument("--ids", required=True)
    s.set_defaults(func=cmd_transfer)

    s = sub.add_parser("dualize", help="dual inverse system of a Boolean direct system")
    s.add_argument("system")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_dualize)

    s = sub.add_parser("primalize", help="direct system of powerset algebras from an inverse system")
    s.add_argument("inverse_system")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_primalize)

    s = sub.add_parser("roundtrip", help="check F(G(S)) ~ S and G(F(A)) ~ A")
    s.add_argument("system")
    s.add_argument("--term", required=True)
    s.set_defaults(func=cmd_roundtrip)

    s = sub.add_parser("dual-roundtrip", help="check the duality round trips")
    s.add_argument("system")
    s.set_defaults(func=cmd_dual_roundtrip)

    s = sub.add_parser("gen", help="seeded random Boolean direct system")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--fibers", type=int, required=True, choices=(1, 2, 3))
    s.add_argument("--fiber-size", type=int, required=True, choices=(2, 4, 8))
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)
    return p


MALFORMED = (
    Malformed,
    docs.DocumentError,
    TermSyntaxError,
    ArityError,
    SignatureMismatch,
    SizeBoundError,
    NotBoolean,
    DirectSystemError,
    InverseSystemError,
    MorphismError,
    SemilatticeError,
)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except MALFORMED as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
