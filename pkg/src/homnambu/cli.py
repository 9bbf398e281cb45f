"""Command-line front end.

Exit status: 0 when every check passes, 1 when a check fails or a
construction's hypothesis is violated, 2 on unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import catalog
from .dersolve import solve, verify_space
from .errors import FormatError, HomNambuError, PreconditionError
from .fileformat import (
    parse_algebra_file,
    parse_cochain_file,
    serialize_algebra,
    serialize_cochain,
)
from .homcore import CheckReport, HomAlgebra, check_multiplicative, hom_lie_suite
from .induce import induce_nbracket
from .nuplet import build_nuplet, check_lts_axioms, check_nuplet_axioms, recursion_discrepancies
from .reports import fmt_indices, fmt_vector, format_report

SIZE_NOTE = (
    "Linear algebra is exact and dense: keep the algebra dimension at about 12 or "
    "less and the unknown count (n+1)*d^2 of the derivation solvers at about 1000 or less."
)

KIND_ALIASES = {
    "der": "derivation",
    "qder": "quasiderivation",
    "cent": "centroid",
    "gder": "generalized",
    "inner": "inner",
}


class _Exit(Exception):
    def __init__(self, code: int, message: str = ""):
        super().__init__(message)
        self.code = code
        self.message = message


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _Exit(2, f"cannot read {path}: {exc.strerror}")


def _load(path: str) -> HomAlgebra:
    try:
        return parse_algebra_file(_read(path))
    except FormatError as exc:
        raise _Exit(2, f"{path}: {exc}")


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _print_report(r: CheckReport, labels) -> int:
    sys.stdout.write(format_report(r, labels))
    return 0 if r.passed else 1


def _require_multiplicative(A: HomAlgebra, what: str):
    r = check_multiplicative(A)
    if not A.multiplicative or not r.passed:
        sys.stdout.write(format_report(r, A.labels))
        raise _Exit(1, f"{what} needs a multiplicative algebra; {A.name} is not "
                       "(flag missing or twist does not commute with the bracket)")


def suite_for(A: HomAlgebra, suite: str = "auto") -> CheckReport:
    if suite == "auto":
        if A.skew or A.arity == 2:
            suite = "hom-lie"
        elif A.arity == 3:
            suite = "lts"
        else:
            suite = "nuplet"
    if suite == "hom-lie":
        return hom_lie_suite(A)
    if suite == "lts":
        return check_lts_axioms(A)
    return check_nuplet_axioms(A)


def cmd_check(args) -> int:
    A = _load(args.file)
    return _print_report(suite_for(A, args.suite), A.labels)


def cmd_induce(args) -> int:
    g = _load(args.file)
    try:
        c = parse_cochain_file(_read(args.cochain), g)
    except FormatError as exc:
        raise _Exit(2, f"{args.cochain}: {exc}")
    _require_multiplicative(g, "induce")
    A = induce_nbracket(g, c, args.n, verify=args.verify_theorem)
    _emit(serialize_algebra(A), args.output)
    code = 0
    for r in A.provenance.reports:
        code = max(code, _print_report(r, g.labels))
    return code


def _fmt_map(M, labels) -> str:
    return ", ".join(f"{labels[i]} -> {fmt_vector(M.column(i), labels)}" for i in range(M.cols))


def cmd_der(args) -> int:
    A = _load(args.file)
    kind = KIND_ALIASES[args.kind]
    _require_multiplicative(A, "der")
    sol = solve(A, kind, args.k)
    lines = [f"kind {kind}", f"k {args.k}", f"dim {sol.dim}"]
    for b, maps in enumerate(sol.maps(), start=1):
        for u, M in enumerate(maps):
            tag = f"basis {b}" if sol.tuple_width == 1 else f"basis {b} map {u}"
            lines.append(f"{tag}: {_fmt_map(M, A.labels)}")
    sys.stdout.write("\n".join(lines) + "\n")
    return _print_report(verify_space(A, sol), A.labels)


def cmd_nuplet(args) -> int:
    g = _load(args.file)
    try:
        S = build_nuplet(g, args.n)
    except PreconditionError as exc:
        if exc.report is not None:
            sys.stdout.write(format_report(exc.report, g.labels))
        raise _Exit(1, str(exc))
    _emit(serialize_algebra(S), args.output)
    code = 0
    if args.diagnose_recursion:
        diffs = recursion_discrepancies(g, args.n)
        lines = [f"recursion readings differ on {len(diffs)} basis tuples"]
        lines += [f"  {fmt_indices(t, g.labels)}" for t in diffs]
        sys.stdout.write("\n".join(lines) + "\n")
    if args.check:
        code = _print_report(check_nuplet_axioms(S), S.labels)
        if args.n == 3:
            code = max(code, _print_report(check_lts_axioms(S), S.labels))
    return code


def _window(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like A..B, got {text!r}")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def cmd_qhv(args) -> int:
    try:
        rule = catalog.build_q_hv(args.q, args.window)
    except ValueError as exc:
        raise _Exit(2, str(exc))
    return _print_report(catalog.check_graded_identities(rule), None)


def cmd_example(args) -> int:
    algebras = catalog.example_algebras()
    cochains = catalog.example_cochains()
    if args.name in algebras:
        sys.stdout.write(serialize_algebra(algebras[args.name]))
        return 0
    if args.name in cochains:
        owner = catalog.build_heisenberg(cochains[args.name].dim)
        sys.stdout.write(serialize_cochain(cochains[args.name], owner.labels))
        return 0
    names = ", ".join(list(algebras) + list(cochains))
    raise _Exit(2, f"unknown example {args.name!r}; available: {names}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="homnambu",
        description="Exact checks and constructions for n-ary Hom-Nambu algebras.",
        epilog=SIZE_NOTE + " Exit status: 0 pass, 1 check failed, 2 bad input.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="run the identity suite for an algebra file",
                       epilog=SIZE_NOTE)
    s.add_argument("file")
    s.add_argument("--suite", choices=("auto", "hom-lie", "nuplet", "lts"), default="auto",
                   help="auto: hom-lie for binary or skew algebras, else lts (n=3) or nuplet")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("induce", help="n-bracket induced by a cochain", epilog=SIZE_NOTE)
    s.add_argument("file")
    s.add_argument("--cochain", required=True, help="cochain file of degree n-2")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--verify-theorem", action="store_true",
                   help="also check the sufficient conditions and the trace property")
    s.add_argument("-o", "--output", help="write the induced algebra here instead of stdout")
    s.set_defaults(func=cmd_induce)

    s = sub.add_parser("der", help="solve for derivation-type maps", epilog=SIZE_NOTE)
    s.add_argument("file")
    s.add_argument("--k", type=int, default=0, help="twist exponent, -1 or larger")
    s.add_argument("--kind", choices=tuple(KIND_ALIASES), default="der")
    s.set_defaults(func=cmd_der)

    s = sub.add_parser("nuplet", help="iterated-bracket n-uplet system of a binary algebra",
                       epilog=SIZE_NOTE)
    s.add_argument("file")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("-o", "--output")
    s.add_argument("--check", action="store_true", help="verify the n-uplet axioms")
    s.add_argument("--diagnose-recursion", action="store_true",
                   help="list tuples where the alpha-free recursion disagrees")
    s.set_defaults(func=cmd_nuplet)

    s = sub.add_parser("qhv", help="windowed checks of the q-deformed Heisenberg-Virasoro rule")
    s.add_argument("--q", type=_rational, required=True)
    s.add_argument("--window", type=_window, default=(-4, 4), help="index range A..B")
    s.set_defaults(func=cmd_qhv)

    s = sub.add_parser("example", help="print a catalog algebra or cochain file")
    s.add_argument("name")
    s.set_defaults(func=cmd_example)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Exit as exc:
        if exc.message:
            print(f"homnambu: {exc.message}", file=sys.stderr)
        return exc.code
    except PreconditionError as exc:
        if exc.report is not None:
            sys.stdout.write(format_report(exc.report))
        print(f"homnambu: {exc}", file=sys.stderr)
        return 1
    except HomNambuError as exc:
        print(f"homnambu: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
