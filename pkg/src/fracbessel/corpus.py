"""The shared corpus of test functions.

Every compactly supported member is C-infinity, vanishes identically outside
its support and carries analytic derivatives up to order 4 (derived
symbolically once at import).  Each entry lists facts with independently
known values that are re-checked by quadrature when the corpus is built.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import sympy as sp

from .functions import TestFunction, check_derivatives
from .quad import QuadSpec, integrate_finite, integrate_unit_singular

MAX_ORDER = 4
INDICATOR_RAMP = 1e-3
# beyond this distance from the ramp ends the transcendental factors are below 1e-80
_EDGE = 0.005

_t = sp.Symbol("t", real=True)


def _lambdified_chain(expr):
    return [sp.lambdify(_t, sp.diff(expr, _t, k), "numpy") for k in range(MAX_ORDER + 1)]


# smooth step: 0 for t <= 0, 1 for t >= 1, S(t) + S(1 - t) = 1
_STEP = _lambdified_chain(1 / (1 + sp.exp(1 / _t - 1 / (1 - _t))))
# bump exp(-1/(1 - t^2)) on (-1, 1)
_BUMP = _lambdified_chain(sp.exp(-1 / (1 - _t ** 2)))


def _step_derivative(k, t):
    t = np.asarray(t, dtype=float)
    core = (t > _EDGE) & (t < 1 - _EDGE)
    safe = np.where(core, t, 0.5)
    with np.errstate(over="ignore", invalid="ignore"):
        val = np.where(core, _STEP[k](safe), 0.0)
    if k == 0:
        val = np.where(t >= 1 - _EDGE, 1.0, val)
    return val


def _bump_derivative(k, t):
    t = np.asarray(t, dtype=float)
    core = np.abs(t) < 1 - _EDGE
    safe = np.where(core, t, 0.0)
    with np.errstate(over="ignore", invalid="ignore"):
        return np.where(core, _BUMP[k](safe), 0.0)


def _product_derivatives(factors, order):
    """Leibniz rule for a product of factors given as lists of derivative callables."""
    def nth(n, y):
        # recursive split: (f * rest)^(n) = sum binom(n, j) f^(j) rest^(n-j)
        def rest_deriv(idx, m):
            if idx == len(factors) - 1:
                return factors[idx][m](y)
            return sum(math.comb(m, j) * factors[idx][j](y) * rest_deriv(idx + 1, m - j)
                       for j in range(m + 1))
        return rest_deriv(0, n)
    return [lambda y, n=n: nth(n, y) for n in range(order + 1)]


def _ramp_up(lo, width):
    return [lambda y, k=k: _step_derivative(k, (y - lo) / width) / width ** k
            for k in range(MAX_ORDER + 1)]


def _ramp_down(hi, width):
    return [lambda y, k=k: _step_derivative(k, (hi - y) / width) * (-1.0 / width) ** k
            for k in range(MAX_ORDER + 1)]


def _monomial(power):
    def deriv(k):
        coef = math.prod(power - j for j in range(k))
        return lambda y: coef * np.asarray(y, dtype=float) ** (power - k)
    return [deriv(k) for k in range(MAX_ORDER + 1)]


def smooth_bump(lo: float = 1.0, hi: float = 2.0) -> TestFunction:
    """``exp(-1/(1 - t^2))`` rescaled to the support ``[lo, hi]``."""
    centre, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
    chain = [lambda y, k=k: _bump_derivative(k, (y - centre) / half) / half ** k
             for k in range(MAX_ORDER + 1)]
    return TestFunction(chain[0], support=(lo, hi), derivatives=tuple(chain[1:]),
                        label="bump", breakpoints=(centre,))


def ramped_square(lo: float = 0.5, hi: float = 3.0, width: float = 0.5) -> TestFunction:
    """``y^2`` switched on over ``[lo, lo+width]`` and off over ``[hi-width, hi]``."""
    chain = _product_derivatives([_monomial(2), _ramp_up(lo, width), _ramp_down(hi, width)],
                                 MAX_ORDER)
    return TestFunction(chain[0], support=(lo, hi), derivatives=tuple(chain[1:]),
                        label="x2cut", breakpoints=(lo + width, hi - width))


def indicator_surrogate(lo: float = 2.0, hi: float = 3.0,
                        width: float = INDICATOR_RAMP) -> TestFunction:
    """Smooth stand-in for the indicator of ``[lo, hi]`` with ramps of the given width."""
    chain = _product_derivatives([_ramp_up(lo, width), _ramp_down(hi, width)], MAX_ORDER)
    return TestFunction(chain[0], support=(lo, hi), derivatives=tuple(chain[1:]),
                        label="indicator",
                        breakpoints=(lo + width / 2, lo + width, hi - width, hi - width / 2))


def _hermite_chain():
    y = sp.Symbol("y", real=True)
    g = sp.exp(-y ** 2)
    return [sp.lambdify(y, sp.diff(g, y, k), "numpy") for k in range(MAX_ORDER + 1)]


_GAUSS = _hermite_chain()


def gaussian() -> TestFunction:
    """``exp(-x^2)``: decays at infinity together with its first derivative."""
    return TestFunction(_GAUSS[0], support=None, derivatives=tuple(_GAUSS[1:]),
                        label="gaussian", scale=1.0)


def power_function(m: float, x_scale: float = 1.0) -> TestFunction:
    """``y^m`` on the whole semiaxis; integrals against it are truncated by doubling."""
    chain = _monomial(m)
    return TestFunction(chain[0], support=None, derivatives=tuple(chain[1:]),
                        label=f"power({m:g})", scale=x_scale, tail_exponent=m,
                        decay="algebraic")


@dataclass(frozen=True)
class CorpusEntry:
    fn: TestFunction
    known_facts: tuple = ()  # (kind, argument, value)

    @property
    def name(self) -> str:
        return self.fn.label


_FACT_SPEC = QuadSpec(rel_tol=1e-13, abs_tol=1e-15)


def _verify_fact(f: TestFunction, kind: str, arg: float, value: float) -> float:
    if kind != "mellin":
        raise ValueError(f"unknown fact kind {kind!r}")
    s = arg
    if f.support is not None:
        got, _ = integrate_finite(lambda y: y ** (s - 1.0) * f(y), *f.support, _FACT_SPEC,
                                  points=f.breakpoints)
    else:
        # (0, Y] with the x^(s-1) endpoint handled by tanh-sinh, then a finite tail
        cut = 8.0 * f.scale
        got = cut ** s * integrate_unit_singular(lambda t: f(cut * t), s - 1.0, 0.0, _FACT_SPEC)
        got += integrate_finite(lambda y: y ** (s - 1.0) * f(y), cut, 4 * cut, _FACT_SPEC)[0]
    err = abs(got - value) / max(1.0, abs(value))
    if err > 1e-10:
        raise AssertionError(f"{f.label}: mellin({s}) = {got!r}, expected {value!r}")
    return err


def _entries():
    ind = indicator_surrogate()
    return [
        # reference values of the bump computed at 30 digits with mpmath
        CorpusEntry(smooth_bump(), (("mellin", 1.0, 0.221996908084039718911524460585),
                                    ("mellin", 2.0, 0.332995362126059578367286690878))),
        # ramps are mirror images, so the y-weighted ramp areas combine exactly
        CorpusEntry(ramped_square(), (("mellin", 0.0, 3.5),)),
        CorpusEntry(gaussian(), (("mellin", 1.0, math.sqrt(math.pi) / 2),
                                 ("mellin", 2.0, 0.5))),
        # S(t) + S(1-t) = 1 gives each ramp area width/2
        CorpusEntry(ind, (("mellin", 1.0, 1.0 - INDICATOR_RAMP),)),
        CorpusEntry(power_function(-3.0), ()),
    ]


@lru_cache(maxsize=1)
def _build():
    entries = tuple(_entries())
    for entry in entries:
        for kind, arg, value in entry.known_facts:
            _verify_fact(entry.fn, kind, arg, value)
        if entry.fn.support is not None or entry.fn.decay == "exponential":
            check_derivatives(entry.fn)
    return entries


def standard_corpus() -> list:
    """The shared list of :class:`CorpusEntry` objects (built and verified once)."""
    return list(_build())


def corpus_names() -> list:
    return [e.name for e in _build()]


def get(name: str) -> TestFunction:
    for entry in _build():
        if entry.name == name:
            return entry.fn
    raise KeyError(f"unknown corpus function {name!r}; choose from {corpus_names()}")


def compact_members() -> list:
    return [e.fn for e in _build() if e.fn.compact]
