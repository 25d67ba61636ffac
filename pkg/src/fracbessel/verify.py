"""Verification suites: each check compares an identity's two sides numerically.

A check is a dict ``{"name", "error", "tol", "pass"}``; suites return their
checks sorted by name.
"""
from __future__ import annotations

import math
import time
from typing import Callable, Iterable

import numpy as np

from . import corpus
from .kernels import OperatorParams, kernel_hyp, kernel_legendre
from .mellin import (IntegralMellin, derivative_sides, mellin_symbol_DB, mellin_symbol_IB,
                     mellin_sides, symbol_semigroup_check)
from .operators import (bessel_applied, bessel_apply, frac_bessel_derivative,
                        frac_bessel_integral, frac_bessel_integral_power, liouville_integral,
                        power_closed_form, sampled_integral, saigo_reduction, stencil_reach)
from .quad import QuadSpec
from .specfun import gamma_signed, hyp2f1

SEED = 20240611

OPERATOR_X = (0.25, 0.5, 1.0, 1.5)
OPERATOR_ALPHA = (0.25, 0.5, 1.0, 1.7)
SAIGO_NU = (0.0, 0.5, 1.0, 2.0, 3.5)
GAUSSIAN_NU = (0.0, 0.5, 1.0, 2.0, 3.0)
# (m, alpha, nu) with m + 2 alpha + nu < 1 and m + 2 alpha < 0
POWER_TRIPLES = (
    (-3.0, 0.25, 0.5), (-4.0, 0.5, 0.0), (-3.5, 0.3, 1.0), (-5.0, 1.0, 2.0),
    (-6.0, 1.5, 1.5), (-3.0, 0.5, 0.2), (-2.5, 0.4, 0.3), (-4.5, 0.75, 2.5),
    (-7.0, 2.0, 3.0), (-2.2, 0.1, 0.0),
)
MELLIN_ALPHA = (0.5, 1.25)
MELLIN_NU = (0.0, 0.5, 1.0, 2.0)
SEMIGROUP_PAIRS = ((0.3, 0.4), (0.5, 0.5), (1.0, 0.25))
SEMIGROUP_NU = (0.0, 1.0, 2.5)
DERIVATIVE_NU = (0.0, 1.0, 2.5)

SEMIGROUP_SPEC = QuadSpec(rel_tol=1e-9, abs_tol=1e-13)


def _check(name: str, error: float, tol: float) -> dict:
    error = float(error)
    return {"name": name, "error": error, "tol": tol, "pass": bool(error <= tol)}


def _rel(a: float, b: float, floor: float = 0.0) -> float:
    return abs(a - b) / max(abs(b), floor, 1e-300)


def _operator_corpus():
    # members the integral operators act on: compact ones plus the gaussian
    return [e.fn for e in corpus.standard_corpus() if e.fn.compact or e.name == "gaussian"]


# --------------------------------------------------------------------------


def suite_specfun() -> list:
    rng = np.random.default_rng(SEED)
    checks = []
    worst = 0.0
    for _ in range(500):
        b = rng.uniform(0.1, 3.0)
        c = b + rng.uniform(0.1, 3.0)
        a = rng.uniform(-3.0, 3.0)
        z = rng.uniform(0.35, 0.65)
        series = hyp2f1(a, b, c, z, method="series")
        euler = hyp2f1(a, b, c, z, method="euler")
        worst = max(worst, _rel(euler, series))
    checks.append(_check("specfun/hyp2f1_dual_path", worst, 1e-10))

    worst = 0.0
    for x in rng.uniform(-5.0, 5.0, 100):
        if x == round(x):
            continue
        k = round(x)
        sin_pi_x = math.sin(math.pi * (x - k)) * (-1) ** k
        val = gamma_signed(x) * gamma_signed(1.0 - x) * sin_pi_x / math.pi
        worst = max(worst, abs(val - 1.0))
    checks.append(_check("specfun/gamma_reflection", worst, 1e-12))

    worst = 0.0
    for z in rng.uniform(-4.9, 4.9, 100):
        if 2 * z == round(2 * z):
            continue
        lhs = gamma_signed(2 * z)
        rhs = 2.0 ** (2 * z - 1) / math.sqrt(math.pi) * gamma_signed(z) * gamma_signed(z + 0.5)
        worst = max(worst, _rel(lhs, rhs))
    checks.append(_check("specfun/gamma_duplication", worst, 1e-12))
    return checks


def suite_kernels() -> list:
    rng = np.random.default_rng(SEED + 1)
    worst = 0.0
    for _ in range(200):
        x = rng.uniform(0.1, 5.0)
        y = x * math.exp(rng.uniform(math.log(1.01), math.log(100.0)))
        p = OperatorParams(rng.uniform(0.1, 3.0), rng.uniform(0.0, 6.0))
        worst = max(worst, _rel(kernel_legendre(x, y, p), kernel_hyp(x, y, p)))
    return [_check("kernels/hyp_vs_legendre", worst, 1e-9)]


def suite_liouville() -> list:
    checks = []
    for f in _operator_corpus():
        for x in OPERATOR_X:
            for alpha in OPERATOR_ALPHA:
                p = OperatorParams(alpha, 0.0)
                ours = frac_bessel_integral(f, x, p)
                ref = liouville_integral(f, x, 2.0 * alpha)
                checks.append(_check(f"liouville/{f.label}/x={x:g}/alpha={alpha:g}",
                                     abs(ours - ref) / (1.0 + abs(ref)), 1e-8))
    return checks


def suite_saigo() -> list:
    checks = []
    for f in _operator_corpus():
        for x in OPERATOR_X:
            for alpha in OPERATOR_ALPHA:
                for nu in SAIGO_NU:
                    p = OperatorParams(alpha, nu)
                    ours = frac_bessel_integral(f, x, p)
                    ref = saigo_reduction(f, x, p)
                    checks.append(_check(
                        f"saigo/{f.label}/x={x:g}/alpha={alpha:g}/nu={nu:g}",
                        _rel(ours, ref, 1e-300), 1e-8))
    return checks


def suite_gaussian_inverse() -> list:
    g = corpus.get("gaussian")
    checks = []
    for nu in GAUSSIAN_NU:
        bg = bessel_applied(g, nu)
        p = OperatorParams(1.0, nu)
        for rep in ("hyp", "alpha1"):
            worst = 0.0
            for x in np.linspace(0.2, 2.0, 10):
                got = frac_bessel_integral(bg, float(x), p, representation=rep)
                worst = max(worst, abs(got - math.exp(-x * x)))
            checks.append(_check(f"gaussian_inverse/{rep}/nu={nu:g}", worst, 1e-6))
    return checks


def suite_power() -> list:
    checks = []
    for m, alpha, nu in POWER_TRIPLES:
        p = OperatorParams(alpha, nu)
        closed = power_closed_form(m, p)
        if not closed.valid:
            checks.append(_check(f"power/m={m:g}/alpha={alpha:g}/nu={nu:g}/valid", 1.0, 0.0))
            continue
        worst = 0.0
        for x in (0.5, 1.0, 2.0):
            direct = frac_bessel_integral_power(m, p, x)
            worst = max(worst, _rel(closed.coefficient * x ** closed.exponent, direct))
        checks.append(_check(f"power/m={m:g}/alpha={alpha:g}/nu={nu:g}", worst, 1e-6))
    # nu = 0: the bracket collapses to Gamma(-m - 2 alpha) / Gamma(-m)
    rng = np.random.default_rng(SEED + 4)
    worst = 0.0
    for _ in range(200):
        alpha = rng.uniform(0.05, 3.0)
        m = -2.0 * alpha - rng.uniform(0.05, 5.0)
        if m == round(m):
            continue
        coef = power_closed_form(m, OperatorParams(alpha, 0.0)).coefficient
        worst = max(worst, _rel(coef, gamma_signed(-m - 2 * alpha) / gamma_signed(-m)))
    checks.append(_check("power/nu0_liouville_reduction", worst, 1e-12))
    return checks


def suite_mellin() -> list:
    checks = []
    for f in corpus.compact_members():
        for alpha in MELLIN_ALPHA:
            for nu in MELLIN_NU:
                p = OperatorParams(alpha, nu)
                numeric = IntegralMellin(f, p)
                grid = [s for s in (1.0, 2.0, 4.0) if s > max(0.0, nu - 1.0)]
                if nu < 1.0:
                    grid.append((nu - 1.0) / 2.0)  # probe inside (nu - 1, 0)
                    grid.append(0.5)               # and inside (0, 1)
                for s in grid:
                    lhs, rhs = mellin_sides(f, s, p, numeric)
                    checks.append(_check(
                        f"mellin/integral/{f.label}/alpha={alpha:g}/nu={nu:g}/s={s:g}",
                        _rel(lhs, rhs), 1e-5))
        for nu in DERIVATIVE_NU:
            for s in (3.0, 4.5):
                lhs, rhs = derivative_sides(f, s, nu)
                checks.append(_check(f"mellin/derivative/{f.label}/nu={nu:g}/s={s:g}",
                                     _rel(lhs, rhs), 1e-5))
    rng = np.random.default_rng(SEED + 5)
    worst_ib = worst_db = 0.0
    for _ in range(200):
        alpha = rng.uniform(0.05, 3.0)
        s = rng.uniform(0.1, 8.0)
        p = OperatorParams(alpha, 0.0)
        worst_ib = max(worst_ib, _rel(mellin_symbol_IB(s, p),
                                      gamma_signed(s) / gamma_signed(s + 2 * alpha)))
        s_db = 2 * alpha + s
        worst_db = max(worst_db, _rel(mellin_symbol_DB(s_db, p),
                                      gamma_signed(s_db) / gamma_signed(s_db - 2 * alpha)))
    checks.append(_check("mellin/nu0_integral_symbol", worst_ib, 1e-12))
    checks.append(_check("mellin/nu0_derivative_symbol", worst_db, 1e-12))
    return checks


def check_symbol_index_law(n: int = 1000) -> dict:
    """Index law of the integral symbol on ``n`` random valid tuples."""
    rng = np.random.default_rng(SEED + 7)
    worst = 0.0
    for _ in range(n):
        nu = rng.uniform(0.0, 6.0)
        s = max(nu - 1.0, 0.0) + rng.uniform(0.01, 6.0)
        ratio = symbol_semigroup_check(s, rng.uniform(0.05, 3.0), rng.uniform(0.05, 3.0), nu)
        worst = max(worst, abs(ratio - 1.0))
    return _check("semigroup/symbol_index_law", worst, 1e-11)


def checks_numeric_semigroup() -> list:
    """``IB^alpha IB^beta f`` through a sampled inner function against ``IB^(alpha+beta) f``."""
    checks = []
    for f in corpus.compact_members():
        a, b = f.support
        xs = (0.5 * a, a + 0.25 * (b - a), a + 0.6 * (b - a))
        for alpha, beta in SEMIGROUP_PAIRS:
            for nu in SEMIGROUP_NU:
                inner = sampled_integral(f, OperatorParams(beta, nu), min(xs), SEMIGROUP_SPEC,
                                         rel_tol=1e-8)
                worst = 0.0
                for x in xs:
                    lhs = frac_bessel_integral(inner, x, OperatorParams(alpha, nu), SEMIGROUP_SPEC)
                    rhs = frac_bessel_integral(f, x, OperatorParams(alpha + beta, nu),
                                               SEMIGROUP_SPEC)
                    worst = max(worst, _rel(lhs, rhs))
                checks.append(_check(
                    f"semigroup/{f.label}/alpha={alpha:g}/beta={beta:g}/nu={nu:g}", worst, 1e-5))
    return checks


def suite_semigroup() -> list:
    return [check_symbol_index_law(), *checks_numeric_semigroup()]


def _interior(f, n=2):
    a, b = f.support
    return [a + (b - a) * k / (n + 1) for k in range(1, n + 1)]


def suite_derivative() -> list:
    checks = []
    for f in _operator_corpus():
        xs = _interior(f) if f.compact else (0.5, 1.0, 1.5)
        for nu in DERIVATIVE_NU:
            worst = 0.0
            for x in xs:
                got = frac_bessel_derivative(f, x, OperatorParams(1.0, nu))
                worst = max(worst, abs(got - bessel_apply(f, x, nu)) /
                            max(1.0, abs(bessel_apply(f, x, nu))))
            checks.append(_check(f"derivative/order1/{f.label}/nu={nu:g}", worst, 1e-8))
    for f in corpus.compact_members():
        xs = _interior(f)
        lo = min(xs) - 1.1 * stencil_reach(min(xs), 0.5)
        for nu in DERIVATIVE_NU:
            p = OperatorParams(0.5, nu)
            inner = sampled_integral(f, p, lo)
            worst = max(abs(frac_bessel_derivative(inner, x, p) - f(x)) for x in xs)
            checks.append(_check(f"derivative/left_inverse/{f.label}/nu={nu:g}", worst, 1e-4))
    rng = np.random.default_rng(SEED + 8)
    worst = 0.0
    for _ in range(500):
        nu = rng.uniform(0.0, 6.0)
        alpha = rng.uniform(0.05, 3.0)
        s = 2 * alpha + max(nu - 1.0, 0.0) + rng.uniform(0.01, 6.0)
        p = OperatorParams(alpha, nu)
        worst = max(worst, abs(mellin_symbol_DB(s, p) * mellin_symbol_IB(s - 2 * alpha, p) - 1))
    checks.append(_check("derivative/symbol_reciprocity", worst, 1e-12))
    return checks


SUITES: dict[str, Callable[[], list]] = {
    "specfun": suite_specfun,
    "kernels": suite_kernels,
    "liouville": suite_liouville,
    "saigo": suite_saigo,
    "gaussian_inverse": suite_gaussian_inverse,
    "power": suite_power,
    "mellin": suite_mellin,
    "semigroup": suite_semigroup,
    "derivative": suite_derivative,
}


# older numbered names of the operator suites, still accepted
SUITE_ALIASES = {
    "property1": "liouville",
    "property2": "saigo",
    "property3": "gaussian_inverse",
    "property4": "power",
}


def run_suite(name: str) -> dict:
    """Run one suite and return ``{"suite", "checks", "seconds"}``."""
    name = SUITE_ALIASES.get(name, name)
    try:
        suite = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}") from None
    start = time.perf_counter()
    checks = sorted(suite(), key=lambda c: c["name"])
    return {"suite": name, "checks": checks, "seconds": time.perf_counter() - start}


def run_all(names: Iterable[str] = ()) -> list:
    return [run_suite(n) for n in (list(names) or list(SUITES))]


def report(name: str = "all") -> dict:
    """JSON-ready report ``{schema, suite, checks}`` for one suite or ``"all"``."""
    results = run_all([] if name == "all" else [name])
    checks = sorted((c for r in results for c in r["checks"]), key=lambda c: c["name"])
    return {"schema": 1, "suite": name, "checks": checks,
            "seconds": {r["suite"]: round(r["seconds"], 3) for r in results}}
