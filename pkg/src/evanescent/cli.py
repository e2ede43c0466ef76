"""Batch command-line front end.

Every run with identical inputs and seed produces byte-identical
output.  Results go to stdout, diagnostics to stderr; exit status is 2
on usage errors, 1 on a failed verification or a failed
--expect-evanescent check, 0 otherwise.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import baric, homgen, magma, syntax, trainsgen
from .peirce import is_evanescent, peirce_recursive
from .poly import Polynomial
from .rationals import Q, qstr

_FAMILIES = {"n": ("n",), "n,1": ("n", 1), "n,2": ("n", 2), "n,1,1": ("n", 1, 1)}


def _parse_type(text):
    try:
        return magma.normalize_type(int(part) for part in text.split(","))
    except ValueError as exc:
        raise SystemExit(_usage_error(f"bad type {text!r}: {exc}"))


def _usage_error(message) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _emit_poly(f, ty, fmt, out):
    if fmt == "jsonl":
        out.write(json.dumps(syntax.polynomial_to_json(f, ty), sort_keys=True) + "\n")
    else:
        out.write(syntax.format_polynomial(f) + "\n")


def cmd_peirce(args, out) -> int:
    f = syntax.parse(args.expr)
    variables = f.variables()
    if args.var:
        wanted = syntax.parse_monomial(args.var)
        if not wanted.is_leaf:
            raise ValueError("--var takes a single variable name")
        variables = [wanted.var]
    for v in variables:
        p = peirce_recursive(f, v)
        if args.format == "jsonl":
            obj = {
                "variable": v.name,
                "coeffs": [qstr(c) for c in p.coeffs],
                "pretty": p.to_string(),
            }
            out.write(json.dumps(obj, sort_keys=True) + "\n")
        else:
            out.write(f"d_{v.name} = {p.to_string()}\n")
    return 0


def cmd_check(args, out) -> int:
    f = syntax.parse(args.expr)
    report = is_evanescent(f)
    if args.format == "jsonl":
        obj = {
            "polynomial": syntax.format_polynomial(f),
            "at_ones": qstr(report.at_ones),
            "peirce": {
                v.name: p.to_string() for v, p in sorted(report.peirce.items())
            },
            "peirce_evanescent": report.is_peirce_evanescent,
            "evanescent_identity": report.is_evanescent_identity,
        }
        out.write(json.dumps(obj, sort_keys=True) + "\n")
    else:
        out.write(f"polynomial: {syntax.format_polynomial(f)}\n")
        for v, p in sorted(report.peirce.items()):
            out.write(f"d_{v.name} = {p.to_string()}\n")
        out.write(f"value at ones = {qstr(report.at_ones)}\n")
        if report.is_evanescent_identity:
            out.write("verdict: evanescent identity\n")
        elif report.is_peirce_evanescent:
            out.write("verdict: Peirce-evanescent, nonzero coefficient sum\n")
        else:
            out.write("verdict: not evanescent\n")
    if args.expect_evanescent and not report.is_evanescent_identity:
        return 1
    return 0


def _train_types(args):
    if args.type in _FAMILIES:
        if args.all is None:
            raise SystemExit(
                _usage_error("family types like 'n,1' need --all MAXDEG")
            )
        shape = _FAMILIES[args.type]
        extra = sum(c for c in shape if isinstance(c, int))
        for n in range(1, args.all - extra + 1):
            yield (n,) + tuple(c for c in shape if isinstance(c, int))
    else:
        yield _parse_type(args.type)


def cmd_train(args, out) -> int:
    if args.of:
        w = syntax.parse_monomial(args.of)
        identity = trainsgen.train_identity(w)
        _emit_poly(identity.polynomial, identity.type, args.format, out)
        return 0
    if not args.type:
        raise SystemExit(_usage_error("train needs --of EXPR or --type TYPE"))
    for ty in _train_types(args):
        for identity in trainsgen.generate_train_basis(ty, max_degree=args.max_degree):
            _emit_poly(identity.polynomial, identity.type, args.format, out)
    return 0


def cmd_homog(args, out) -> int:
    ty = _parse_type(args.type)
    for identity in homgen.generate_homogeneous(ty):
        _emit_poly(identity.polynomial, identity.type, args.format, out)
    return 0


def cmd_enum(args, out) -> int:
    ty = _parse_type(args.type)
    for m in magma.monomials_of_type(ty):
        if args.format == "jsonl":
            out.write(
                json.dumps({"monomial": syntax.format_monomial(m)}, sort_keys=True)
                + "\n"
            )
        else:
            out.write(syntax.format_monomial(m) + "\n")
    return 0


def cmd_wnumber(args, out) -> int:
    ty = _parse_type(args.type)
    if args.format == "jsonl":
        out.write(
            json.dumps({"type": list(ty), "count": magma.w_number(ty)}, sort_keys=True)
            + "\n"
        )
    else:
        out.write(f"{magma.w_number(ty)}\n")
    return 0


def cmd_verify(args, out) -> int:
    algebra = baric.load_algebra(args.algebra)
    f = syntax.parse(args.identity)
    out.write(f"# seed={args.seed} trials={args.trials}\n")
    result = baric.verify_identity(f, algebra, trials=args.trials, seed=args.seed)
    if args.format == "jsonl":
        obj = {
            "passed": result.passed,
            "trials": result.trials,
            "seed": result.seed,
            "failed_trial": result.failed_trial,
            "mode": result.mode,
            "counterexample": {
                name: [qstr(c) for c in vec]
                for name, vec in (result.counterexample or {}).items()
            }
            or None,
        }
        out.write(json.dumps(obj, sort_keys=True) + "\n")
    elif result.passed:
        out.write("PASS\n")
    else:
        out.write(f"FAIL ({result.mode} evaluation, trial {result.failed_trial})\n")
        for name, vec in sorted(result.counterexample.items()):
            out.write(f"  {name} = ({', '.join(qstr(c) for c in vec)})\n")
    return 0 if result.passed else 1


def cmd_spectrum(args, out) -> int:
    lambdas = [Q(part) for part in args.eigenvalues.split(",")] if args.eigenvalues else []
    algebra, e = baric.spectrum_algebra(lambdas)
    matrix = baric.left_mult_matrix(algebra, e)
    poly = baric.char_poly(matrix)
    roots, remainder = baric.rational_roots(poly)
    if args.format == "jsonl":
        obj = {
            "dim": algebra.dim,
            "char_poly": [qstr(c) for c in poly.coeffs],
            "roots": [[qstr(r), m] for r, m in roots],
            "unfactored": [qstr(c) for c in remainder.coeffs],
        }
        out.write(json.dumps(obj, sort_keys=True) + "\n")
    else:
        out.write(f"dim = {algebra.dim}\n")
        out.write(f"char poly = {poly.to_string(sym='X')}\n")
        rendered = ", ".join(f"{qstr(r)} (x{m})" for r, m in roots)
        out.write(f"roots = {rendered}\n")
        if remainder.degree() > 0:
            out.write(f"unfactored = {remainder.to_string(sym='X')}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("text", "jsonl"), default="text", help="output format"
    )
    parser = argparse.ArgumentParser(
        prog="evanescent",
        description="Peirce polynomials and evanescent identities for baric algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("peirce", parents=[common], help="Peirce polynomials of EXPR")
    p.add_argument("expr")
    p.add_argument("--var", help="restrict to one variable (x, y, z, tN)")
    p.set_defaults(fn=cmd_peirce)

    p = sub.add_parser("check", parents=[common], help="evanescence report for EXPR")
    p.add_argument("expr")
    p.add_argument(
        "--expect-evanescent",
        action="store_true",
        help="exit 1 unless EXPR is an evanescent identity",
    )
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("train", parents=[common], help="train identities")
    p.add_argument("--type", help="concrete type like 6 or 4,1, or family n|n,1|n,2|n,1,1")
    p.add_argument("--of", help="single monomial to reduce")
    p.add_argument("--all", type=int, help="max total degree when --type is a family")
    p.add_argument("--max-degree", type=int, default=10, help="generation degree cap")
    p.set_defaults(fn=cmd_train)

    p = sub.add_parser("homog", parents=[common], help="homogeneous identities")
    p.add_argument("--type", required=True)
    p.set_defaults(fn=cmd_homog)

    p = sub.add_parser("enum", parents=[common], help="enumerate monomials of a type")
    p.add_argument("--type", required=True)
    p.set_defaults(fn=cmd_enum)

    p = sub.add_parser("wnumber", parents=[common], help="count monomials of a type")
    p.add_argument("--type", required=True)
    p.set_defaults(fn=cmd_wnumber)

    p = sub.add_parser("verify", parents=[common], help="randomized identity check")
    p.add_argument("--algebra", required=True, help="JSON algebra file")
    p.add_argument("--identity", required=True, help="polynomial expression")
    p.add_argument("--trials", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("spectrum", parents=[common], help="spectrum construction")
    p.add_argument(
        "--eigenvalues",
        default="",
        help="comma-separated rationals adjoined to the spectrum (1 is implicit)",
    )
    p.set_defaults(fn=cmd_spectrum)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args, sys.stdout)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    except (syntax.ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
