"""Command-line front end: ``fracbessel {eval,table,mellin,closed-form,verify}``.

Exit status 0 on success, 1 on runtime or accuracy failures (and failed
verification), 2 on usage or domain errors.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import corpus
from .errors import AccuracyError, CapabilityError, DomainError
from .kernels import OperatorParams
from .mellin import IntegralMellin, mellin_symbol_IB, mellin_transform
from .operators import frac_bessel_derivative, frac_bessel_integral, power_closed_form
from .quad import QuadSpec
from .verify import SUITE_ALIASES, SUITES, report

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _positive(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return v


def _nonnegative(text: str) -> float:
    v = float(text)
    if not v >= 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {text}")
    return v


def _count(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"point count must be at least 1, got {text}")
    return v


def _float_list(text: str) -> list:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _function_names() -> list:
    return [e.name for e in corpus.standard_corpus() if e.fn.decay != "algebraic"]


def _add_params(p: argparse.ArgumentParser, alpha_required: bool = True):
    p.add_argument("--alpha", type=_positive, required=alpha_required, help="order alpha > 0")
    p.add_argument("--nu", type=_nonnegative, default=0.0, help="Bessel parameter nu >= 0")


def _add_grid(p: argparse.ArgumentParser):
    p.add_argument("--at", type=_positive, action="append", help="evaluation point (repeatable)")
    p.add_argument("--from", dest="x_from", type=_positive, help="first grid point")
    p.add_argument("--to", dest="x_to", type=_positive, help="last grid point")
    p.add_argument("--points", type=_count, default=11, help="number of grid points")


def _add_tolerances(p: argparse.ArgumentParser):
    p.add_argument("--rel-tol", type=_positive, default=1e-10, help="quadrature relative tolerance")
    p.add_argument("--abs-tol", type=_positive, default=1e-14, help="quadrature absolute tolerance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracbessel",
        description="Fractional powers of the Bessel operator D^2 + (nu/x) D on the semiaxis.")
    sub = parser.add_subparsers(dest="command", required=True)
    names = _function_names()

    ev = sub.add_parser("eval", help="evaluate IB^alpha f (or DB^alpha f) on a grid")
    _add_params(ev)
    ev.add_argument("--fn", required=True, choices=names, help="corpus function")
    ev.add_argument("--derivative", action="store_true", help="evaluate DB^alpha instead of IB^alpha")
    ev.add_argument("--kernel", choices=["hyp", "legendre", "alpha1", "nu0"], default="hyp")
    _add_grid(ev)
    _add_tolerances(ev)

    tb = sub.add_parser("table", help="IB^alpha f for several orders, one row per (x, alpha)")
    tb.add_argument("--alphas", type=_float_list, required=True, help="comma-separated orders")
    tb.add_argument("--nu", type=_nonnegative, default=0.0)
    tb.add_argument("--fn", required=True, choices=names)
    tb.add_argument("--derivative", action="store_true")
    _add_grid(tb)
    _add_tolerances(tb)

    me = sub.add_parser("mellin", help="numeric Mellin transform of IB^alpha f against the symbol")
    _add_params(me)
    me.add_argument("--fn", required=True, choices=[n for n in names if corpus.get(n).compact])
    me.add_argument("--s", type=_float_list, default=[1.0, 2.0, 4.0], help="comma-separated s values")

    cf = sub.add_parser("closed-form", help="IB^alpha x^m = coefficient * x^(2 alpha + m)")
    _add_params(cf)
    cf.add_argument("--m", type=float, required=True, help="power exponent m")

    ve = sub.add_parser("verify", help="run verification suites and print a JSON report")
    ve.add_argument("--suite", choices=["all", *SUITES, *SUITE_ALIASES], default="all")
    ve.add_argument("--output", help="also write the report to this file")
    return parser


def _grid(args, parser) -> list:
    if args.at:
        if args.x_from is not None or args.x_to is not None:
            parser.error("--at cannot be combined with --from/--to")
        return list(args.at)
    if args.x_from is None or args.x_to is None:
        parser.error("give either --at or both --from and --to")
    if args.points == 1:
        return [args.x_from]
    return [float(v) for v in np.linspace(args.x_from, args.x_to, args.points)]


def _evaluate(f, x, p, args, spec):
    if args.derivative:
        return frac_bessel_derivative(f, x, p, representation=getattr(args, "kernel", "hyp"),
                                      full_output=True)
    value, err, _ = frac_bessel_integral(f, x, p, spec, full_output=True,
                                        representation=getattr(args, "kernel", "hyp"))
    return value, err


def cmd_eval(args, parser, out) -> int:
    xs = _grid(args, parser)
    p = OperatorParams(args.alpha, args.nu)
    f = corpus.get(args.fn)
    spec = QuadSpec(rel_tol=args.rel_tol, abs_tol=args.abs_tol)
    out.write("x,value,err_est\n")
    for x in xs:
        value, err = _evaluate(f, x, p, args, spec)
        out.write(f"{_fmt(x)},{_fmt(value)},{_fmt(err)}\n")
    return EXIT_OK


def cmd_table(args, parser, out) -> int:
    xs = _grid(args, parser)
    f = corpus.get(args.fn)
    spec = QuadSpec(rel_tol=args.rel_tol, abs_tol=args.abs_tol)
    params = [OperatorParams(a, args.nu) for a in args.alphas]
    out.write("x,alpha,value,err_est\n")
    for x in xs:
        for p in params:
            value, err = _evaluate(f, x, p, args, spec)
            out.write(f"{_fmt(x)},{_fmt(p.alpha)},{_fmt(value)},{_fmt(err)}\n")
    return EXIT_OK


def cmd_mellin(args, parser, out) -> int:
    p = OperatorParams(args.alpha, args.nu)
    f = corpus.get(args.fn)
    numeric = IntegralMellin(f, p)
    out.write("s,symbol,numeric,predicted,rel_err\n")
    for s in args.s:
        symbol = mellin_symbol_IB(s, p, probe=True)
        lhs = numeric(s)
        rhs = symbol * mellin_transform(f, s + 2.0 * p.alpha)
        rel = abs(lhs - rhs) / max(abs(rhs), 1e-300)
        out.write(f"{_fmt(s)},{_fmt(symbol)},{_fmt(lhs)},{_fmt(rhs)},{_fmt(rel)}\n")
    return EXIT_OK


def cmd_closed_form(args, parser, out) -> int:
    p = OperatorParams(args.alpha, args.nu)
    res = power_closed_form(args.m, p)
    if not res.valid:
        sys.stderr.write(
            f"closed form unavailable: needs m+2α+ν<1 and m+2α<0, got "
            f"m+2α+ν = {_fmt(args.m + 2 * p.alpha + p.nu)}, m+2α = {_fmt(args.m + 2 * p.alpha)}\n")
        return EXIT_USAGE
    out.write(f"coefficient,{_fmt(res.coefficient)}\n")
    out.write(f"exponent,{_fmt(res.exponent)}\n")
    out.write("valid,true\n")
    return EXIT_OK


def cmd_verify(args, parser, out) -> int:
    rep = report(args.suite)
    text = json.dumps(rep, indent=2)
    out.write(text + "\n")
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    return EXIT_OK if all(c["pass"] for c in rep["checks"]) else EXIT_FAIL


COMMANDS = {
    "eval": cmd_eval,
    "table": cmd_table,
    "mellin": cmd_mellin,
    "closed-form": cmd_closed_form,
    "verify": cmd_verify,
}


def main(argv=None, out=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = out or sys.stdout
    try:
        return COMMANDS[args.command](args, parser, out)
    except (DomainError, CapabilityError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (AccuracyError, ArithmeticError, RuntimeError) as exc:
        sys.stderr.write(f"failure: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
