"""Fractional Bessel integral and derivative, and the operators they reduce to."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from .corpus import power_function
from .errors import CapabilityError, DomainError
from .functions import TestFunction, sampled_test_function
from .kernels import (OperatorParams, kernel_alpha1, kernel_hyp, kernel_legendre,
                      kernel_nu0)
from .quad import DEFAULT_SPEC, QuadSpec, integrate_kernel_against, integrate_lower_singular
from .specfun import GammaRatio, gamma_signed, hyp2f1

REPRESENTATIONS = {
    "hyp": kernel_hyp,
    "legendre": kernel_legendre,
    "alpha1": kernel_alpha1,
    "nu0": kernel_nu0,
}


def _kernel_for(representation: str, p: OperatorParams):
    try:
        kernel = REPRESENTATIONS[representation]
    except KeyError:
        raise ValueError(f"unknown kernel representation {representation!r}") from None
    if representation == "alpha1" and p.alpha != 1.0:
        raise DomainError("the alpha1 kernel needs alpha = 1")
    if representation == "nu0" and p.nu != 0.0:
        raise DomainError("the nu0 kernel needs nu = 0")
    return kernel


def frac_bessel_integral(f, x: float, p: OperatorParams, spec: QuadSpec = DEFAULT_SPEC, *,
                         representation: str = "hyp", full_output: bool = False, layout=None):
    """``(IB^alpha_nu f)(x)``: the fractional power ``B_nu^(-alpha)`` on the semiaxis.

    ``representation`` selects the kernel form (``"hyp"``, ``"legendre"``,
    and where they apply ``"alpha1"`` or ``"nu0"``).  With ``full_output``
    the result is ``(value, err_est, layout)``; passing ``layout`` back
    reuses the panel layout without adaptation.
    """
    kernel = _kernel_for(representation, p)
    return integrate_kernel_against(f, x, kernel, p, spec, layout=layout,
                                    full_output=full_output)


def liouville_integral(f, x: float, mu: float, spec: QuadSpec = DEFAULT_SPEC):
    """Liouville integral ``(1/Gamma(mu)) int_x^inf (y - x)^(mu-1) f(y) dy``."""
    if not mu > 0:
        raise DomainError(f"Liouville order must be positive, got {mu}")
    inv_gamma = 1.0 / gamma_signed(mu)

    def regular(y, d):
        return inv_gamma * f(y)

    return integrate_lower_singular(regular, x, f, mu - 1.0, spec)


class _Shifted:
    """Duck-typed function of ``t`` with its own support, for the Saigo operator."""

    def __init__(self, fn, support, breakpoints=(), scale=1.0):
        self.fn = fn
        self.support = support
        self.breakpoints = breakpoints
        self.scale = scale

    def __call__(self, t):
        return self.fn(t)


def saigo_integral(f, x: float, gamma_: float, beta: float, eta: float,
                   spec: QuadSpec = DEFAULT_SPEC):
    """Saigo integral ``J^{gamma, beta, eta}`` of ``f`` at ``x``.

    ``(1/Gamma(gamma)) int_x^inf (t - x)^(gamma-1) t^(-gamma-beta)
    2F1(gamma + beta, -eta; gamma; 1 - x/t) f(t) dt``.  ``f`` must expose
    ``support`` like a :class:`TestFunction`.
    """
    if not gamma_ > 0:
        raise DomainError(f"Saigo order gamma must be positive, got {gamma_}")
    if not x > 0:
        raise DomainError(f"x must be positive, got {x}")
    inv_gamma = 1.0 / gamma_signed(gamma_)
    top = gamma_ + beta

    def regular(t, d):
        t = np.asarray(t, dtype=float)
        hyp = hyp2f1(top, -eta, gamma_, d / t, omz=x / t)
        return inv_gamma * t ** (-top) * hyp * f(t)

    return integrate_lower_singular(regular, x, f, gamma_ - 1.0, spec)


def saigo_reduction(f, x: float, p: OperatorParams, spec: QuadSpec = DEFAULT_SPEC):
    """``IB^alpha f`` computed as ``2^(-2 alpha) J_{x^2}^{2 alpha, (nu-1)/2 - alpha, -alpha}``
    applied to ``t -> t^((nu-1)/2) f(sqrt t)``."""
    half = (p.nu - 1.0) / 2.0

    def phi(t):
        t = np.asarray(t, dtype=float)
        return t ** half * f(np.sqrt(t))

    if f.support is not None:
        support = (f.support[0] ** 2, f.support[1] ** 2)
        breaks = tuple(b * b for b in getattr(f, "breakpoints", ()))
        g = _Shifted(phi, support, breaks)
    else:
        g = _Shifted(phi, None, scale=getattr(f, "scale", 1.0) ** 2)
    value = saigo_integral(g, x * x, 2.0 * p.alpha, half - p.alpha, -p.alpha, spec)
    return 2.0 ** (-2.0 * p.alpha) * value


# --------------------------------------------------------------------------
# the Bessel operator and its powers


def bessel_expansion(nu: float, n: int) -> dict:
    """Coefficients of ``B_nu^n g`` as ``{(k, j): c}`` meaning ``c x^(-j) g^(k)(x)``.

    Built by applying ``D^2 + (nu/x) D`` to the term representation ``n``
    times, so no coefficients are written out by hand.
    """
    if n < 0:
        raise DomainError("power of the Bessel operator must be nonnegative")
    terms = {(0, 0): 1.0}

    def derive(ts):
        out = {}
        for (k, j), c in ts.items():
            if j:
                out[(k, j + 1)] = out.get((k, j + 1), 0.0) - j * c
            out[(k + 1, j)] = out.get((k + 1, j), 0.0) + c
        return out

    for _ in range(n):
        first = derive(terms)
        second = derive(first)
        nxt = dict(second)
        for (k, j), c in first.items():
            nxt[(k, j + 1)] = nxt.get((k, j + 1), 0.0) + nu * c
        terms = {key: c for key, c in nxt.items() if c != 0.0}
    return terms


def bessel_apply(g: TestFunction, x: float, nu: float) -> float:
    """``(B_nu g)(x) = g''(x) + (nu/x) g'(x)`` from the analytic derivatives of ``g``."""
    if not x > 0:
        raise DomainError(f"x must be positive, got {x}")
    return g.derivative(2)(x) + nu / x * g.derivative(1)(x)


def bessel_apply_n(g: TestFunction, x: float, nu: float, n: int) -> float:
    """``B_nu^n g`` at ``x`` using derivatives of ``g`` up to order ``2n``."""
    if n < 1:
        raise DomainError("n must be at least 1")
    if 2 * n > g.order:
        raise CapabilityError(f"B_nu^{n} needs derivatives up to order {2 * n}, "
                              f"{g.label or 'function'} has {g.order}")
    if not x > 0:
        raise DomainError(f"x must be positive, got {x}")
    return math.fsum(c * x ** (-j) * g.derivative(k)(x)
                     for (k, j), c in bessel_expansion(nu, n).items())


def bessel_applied(g: TestFunction, nu: float) -> TestFunction:
    """``B_nu g`` as a new (derivative-free) test function with ``g``'s support."""
    d1, d2 = g.derivative(1), g.derivative(2)

    def fn(y):
        y = np.asarray(y, dtype=float)
        return d2(y) + nu / y * d1(y)

    return TestFunction(fn, support=g.support, label=f"B[{g.label}]", scale=g.scale,
                        breakpoints=g.breakpoints)


# --------------------------------------------------------------------------
# fractional derivative


@lru_cache(maxsize=None)
def fd_weights(offsets: tuple, order: int) -> tuple:
    """Exact finite-difference weights at 0 for the given integer offsets (Fornberg)."""
    z = [Fraction(o) for o in offsets]
    n = len(z)
    c = [[Fraction(0)] * (order + 1) for _ in range(n)]
    c[0][0] = Fraction(1)
    c1 = Fraction(1)
    c4 = z[0]
    for i in range(1, n):
        mn = min(i, order)
        c2 = Fraction(1)
        c5 = c4
        c4 = z[i]
        for j in range(i):
            c3 = z[i] - z[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2
            for k in range(mn, 0, -1):
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3
            c[j][0] = c4 * c[j][0] / c3
        c1 = c2
    return tuple(c[i][order] for i in range(n))


def _stencil_half_width(n: int) -> int:
    # 7-point stencils for B_nu, 9-point for B_nu^2
    return 3 if n == 1 else 4


def fd_step(x: float, n: int) -> float:
    """Finite-difference step for ``B_nu^n``: ``max(1e-4, 1e-3 x)`` for ``n = 1``."""
    if n == 1:
        return max(1e-4, 1e-3 * x)
    return max(1e-3, 2e-2 * x)


def _fd_bessel(values_at, x, h, nu, n):
    """Apply ``B_nu^n`` to a function known only pointwise, Richardson-extrapolated once."""
    m = _stencil_half_width(n)
    base = tuple(range(-m, m + 1))
    offsets = sorted(set(base) | {2 * o for o in base})
    vals = dict(zip(offsets, values_at([x + o * h for o in offsets])))
    derivs = {0: vals[0]}
    plain = {0: vals[0]}
    for k in range(1, 2 * n + 1):
        w = fd_weights(base, k)
        fine = math.fsum(float(wi) * vals[o] for wi, o in zip(w, base)) / h ** k
        coarse = math.fsum(float(wi) * vals[2 * o] for wi, o in zip(w, base)) / (2 * h) ** k
        accuracy = 2 * (m - (k - 1) // 2)
        r = 2.0 ** accuracy
        derivs[k] = (r * fine - coarse) / (r - 1.0)
        plain[k] = fine
    terms = bessel_expansion(nu, n).items()
    value = math.fsum(c * x ** (-j) * derivs[k] for (k, j), c in terms)
    # the Richardson correction bounds the error of the unextrapolated stencil
    err = abs(value - math.fsum(c * x ** (-j) * plain[k] for (k, j), c in terms))
    return value, err


def stencil_reach(x: float, alpha: float) -> float:
    """Distance below ``x`` at which :func:`frac_bessel_derivative` samples its inner function."""
    n = max(1, math.ceil(alpha - 1e-12))
    return 2 * _stencil_half_width(n) * fd_step(x, n)


DERIVATIVE_SPEC = QuadSpec(rel_tol=1e-13, abs_tol=1e-16, max_panels=8192)


def frac_bessel_derivative(f, x: float, p: OperatorParams, spec: Optional[QuadSpec] = None,
                           *, representation: str = "hyp", full_output: bool = False):
    """``(DB^alpha_nu f)(x) = B_nu^n (IB^(n - alpha) f)(x)`` with ``n = ceil(alpha)``.

    At integer ``alpha`` with enough analytic derivatives the Bessel power is
    applied exactly.  Otherwise ``B_nu^n`` acts through central finite
    differences on pointwise values of the inner integral, all computed on
    one frozen quadrature layout so the quadrature error varies smoothly
    across the stencil.  With ``full_output`` the result is ``(value,
    err_est)``, the estimate being the size of the Richardson correction
    (a conservative bound).
    """
    if not x > 0:
        raise DomainError(f"x must be positive, got {x}")
    spec = spec or DERIVATIVE_SPEC
    n = max(1, math.ceil(p.alpha - 1e-12))
    rest = n - p.alpha
    if abs(rest) < 1e-12 and isinstance(f, TestFunction) and f.order >= 2 * n:
        value = bessel_apply_n(f, x, p.nu, n)
        return (value, 0.0) if full_output else value

    h = fd_step(x, n)
    reach = stencil_reach(x, p.alpha)
    if x - reach <= 0.1 * x:
        raise DomainError(f"x={x} is too close to 0 for the finite-difference step {h}")

    if abs(rest) < 1e-12:
        def values_at(xs):
            return [float(f(xi)) for xi in xs]
    else:
        inner = OperatorParams(rest, p.nu)
        kernel = _kernel_for(representation, inner)
        _, _, layout = integrate_kernel_against(f, x, kernel, inner, spec, full_output=True)

        def values_at(xs):
            return [integrate_kernel_against(f, xi, kernel, inner, spec, layout=layout,
                                             full_output=True)[0] for xi in xs]

    value, err = _fd_bessel(values_at, x, h, p.nu, n)
    return (value, err) if full_output else value


# --------------------------------------------------------------------------
# power functions


@dataclass(frozen=True)
class PowerCoefficient:
    """``IB^alpha x^m = coefficient * x^exponent`` when ``valid``."""

    m: float
    params: OperatorParams
    coefficient: Optional[float]
    valid: bool

    @property
    def exponent(self) -> float:
        return 2.0 * self.params.alpha + self.m


def power_condition(m: float, p: OperatorParams) -> bool:
    """Convergence of the power-function integral: ``m + 2 alpha + nu < 1`` and ``m + 2 alpha < 0``."""
    return m + 2.0 * p.alpha + p.nu < 1.0 and m + 2.0 * p.alpha < 0.0


def power_closed_form(m: float, p: OperatorParams) -> PowerCoefficient:
    """Closed-form coefficient of ``IB^alpha`` acting on ``x^m``.

    ``2^(-2 alpha) Gamma[-alpha - m/2, (1-nu)/2 - alpha - m/2 / (1 - nu - m)/2, -m/2]``.
    """
    if not power_condition(m, p):
        return PowerCoefficient(m, p, None, False)
    ratio = GammaRatio([-p.alpha - m / 2.0, -(p.nu - 1.0) / 2.0 - p.alpha - m / 2.0],
                       [(1.0 - p.nu - m) / 2.0, -m / 2.0])
    return PowerCoefficient(m, p, 2.0 ** (-2.0 * p.alpha) * ratio.value(), True)


POWER_SPEC = QuadSpec(rel_tol=1e-11, abs_tol=1e-300, max_panels=8192)


def frac_bessel_integral_power(m: float, p: OperatorParams, x: float,
                               spec: QuadSpec = POWER_SPEC) -> float:
    """``IB^alpha x^m`` at ``x`` by direct quadrature, truncated by doubling.

    The integrand decays like ``y^(m + 2 alpha - 1 + max(0, nu - 1))``; the
    doubling stops once the newest piece is below ``rel_tol`` of the total.
    """
    decay = m + 2.0 * p.alpha - 1.0 + max(0.0, p.nu - 1.0)
    if not decay < -1.0:
        raise DomainError(f"IB x^m diverges at infinity for m={m}, {p}")
    return frac_bessel_integral(power_function(m, x_scale=x), x, p, spec)


# --------------------------------------------------------------------------
# composition through a sampled intermediate function

COMPOSE_SPEC = QuadSpec(rel_tol=1e-12, abs_tol=1e-15, max_panels=8192)


def sampled_integral(f: TestFunction, p: OperatorParams, lo: float,
                     spec: QuadSpec = COMPOSE_SPEC, *, rel_tol: float = 1e-11) -> TestFunction:
    """``IB^alpha f`` sampled on ``[lo, b]`` as a piecewise Chebyshev interpolant (degree 15).

    Valid as input to operators evaluated at points ``>= lo``.  ``f`` must be
    compactly supported on ``[a, b]``; ``IB^alpha f`` vanishes beyond ``b``.
    """
    if f.support is None:
        raise DomainError("sampled_integral needs a compactly supported function")
    hi = f.support[1]
    pts = [pt for pt in (f.support[0], *f.breakpoints) if lo < pt < hi]
    return sampled_test_function(lambda y: frac_bessel_integral(f, y, p, spec), lo, hi,
                                 points=pts, rel_tol=rel_tol, label=f"IB[{f.label}]")


def sampled_derivative(f: TestFunction, p: OperatorParams, lo: float, *,
                       rel_tol: float = 1e-9) -> TestFunction:
    """``DB^alpha f`` sampled on ``[lo, b]``."""
    if f.support is None:
        raise DomainError("sampled_derivative needs a compactly supported function")
    hi = f.support[1]
    pts = [pt for pt in (f.support[0], *f.breakpoints) if lo < pt < hi]
    return sampled_test_function(lambda y: frac_bessel_derivative(f, y, p), lo, hi,
                                 points=pts, rel_tol=rel_tol, label=f"DB[{f.label}]")


def compose_integrals(f: TestFunction, x: float, alpha: float, beta: float, nu: float,
                      spec: QuadSpec = COMPOSE_SPEC, inner: Optional[TestFunction] = None) -> float:
    """``IB^alpha (IB^beta f)(x)`` through a sampled inner function."""
    if inner is None:
        inner = sampled_integral(f, OperatorParams(beta, nu), x, spec)
    return frac_bessel_integral(inner, x, OperatorParams(alpha, nu), spec)
