"""Mellin transforms of test functions and the multiplier symbols of IB and DB."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError
from .functions import TestFunction
from .kernels import OperatorParams
from .operators import bessel_applied, frac_bessel_integral
from .quad import QuadSpec, de_unit, integrate_finite, integrate_unit_singular
from .specfun import GammaRatio, gamma_signed, hyp2f1_excess, rgamma

MELLIN_SPEC = QuadSpec(rel_tol=1e-10, abs_tol=1e-14)


def _is_pole(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def mellin_transform(f: TestFunction, s: float, spec: QuadSpec = MELLIN_SPEC) -> float:
    """``int_0^inf x^(s-1) f(x) dx``.

    Compact supports are integrated panel by panel between breakpoints;
    decaying functions use tanh-sinh on ``(0, 8 scale]`` and a doubling tail.
    """
    if f.support is not None:
        a, b = f.support
        return integrate_finite(lambda y: y ** (s - 1.0) * f(y), a, b, spec,
                                points=f.breakpoints)[0]
    if not s > 0:
        raise DomainError(f"Mellin transform of a decaying function needs s > 0, got {s}")
    cut = 8.0 * f.scale
    total = cut ** s * integrate_unit_singular(lambda t: f(cut * t), s - 1.0, 0.0, spec)
    lo, width = cut, cut
    for _ in range(200):
        piece = integrate_finite(lambda y: y ** (s - 1.0) * f(y), lo, lo + width, spec)[0]
        total += piece
        if abs(piece) <= max(spec.abs_tol, spec.rel_tol * abs(total)):
            break
        lo, width = lo + width, 2.0 * width
    return total


# --------------------------------------------------------------------------
# symbols


@dataclass(frozen=True)
class MellinSymbol:
    """Multiplier ``m(s)`` with ``(T f)*(s) = m(s) f*(s + 2 alpha)`` (integral)
    or ``f*(s - 2 alpha)`` (derivative)."""

    params: OperatorParams
    direction: str = "integral"
    domain_constraint: Optional[float] = None

    def __post_init__(self):
        if self.direction not in ("integral", "derivative"):
            raise ValueError(f"direction must be 'integral' or 'derivative', got {self.direction!r}")
        if self.domain_constraint is None and self.direction == "integral":
            object.__setattr__(self, "domain_constraint", self.params.nu - 1.0)

    @property
    def shift(self) -> float:
        return 2.0 * self.params.alpha * (1.0 if self.direction == "integral" else -1.0)

    def __call__(self, s: float, *, probe: bool = False) -> float:
        if self.direction == "integral":
            return mellin_symbol_IB(s, self.params, probe=probe)
        return mellin_symbol_DB(s, self.params)


def mellin_symbol_IB(s: float, p: OperatorParams, *, probe: bool = False) -> float:
    """``2^(-2a) Gamma[s/2, s/2 - (nu-1)/2 / a + s/2 - (nu-1)/2, a + s/2]``.

    The accepted domain is ``s > max(nu - 1, 0)``.  With ``probe=True`` the
    strip ``nu - 1 < s <= 0`` (only nonempty for ``nu < 1``) is admitted too,
    except at the poles ``s = 0, -2, ...`` of ``Gamma(s/2)``.
    """
    half = (p.nu - 1.0) / 2.0
    if not s > p.nu - 1.0:
        raise DomainError(f"integral symbol needs s > nu - 1 = {p.nu - 1.0:g}, got s={s}")
    if s <= 0:
        if not probe:
            raise DomainError(f"integral symbol at s={s} <= 0: the accepted domain is "
                              f"s > max(nu - 1, 0); pass probe=True to evaluate in (nu - 1, 0)")
        if _is_pole(s / 2.0):
            raise DomainError(f"integral symbol has a pole at s={s}")
    ratio = GammaRatio([s / 2.0, s / 2.0 - half], [p.alpha + s / 2.0 - half, p.alpha + s / 2.0])
    return 2.0 ** (-2.0 * p.alpha) * ratio.value()


def mellin_symbol_DB(s: float, p: OperatorParams) -> float:
    """``2^(2a) Gamma[s/2, s/2 - (nu-1)/2 / s/2 - a - (nu-1)/2, s/2 - a]``; poles raise."""
    half = (p.nu - 1.0) / 2.0
    args = [s / 2.0, s / 2.0 - half, s / 2.0 - p.alpha - half, s / 2.0 - p.alpha]
    for arg in args:
        if _is_pole(arg):
            raise DomainError(f"derivative symbol at s={s}: gamma argument {arg:g} is a pole")
    return 2.0 ** (2.0 * p.alpha) * GammaRatio(args[:2], args[2:]).value()


def symbol_semigroup_check(s: float, alpha: float, beta: float, nu: float) -> float:
    """``IB(s; alpha) IB(s + 2 alpha; beta) / IB(s; alpha + beta)``, which is 1 by the index law."""
    if not (alpha > 0 and beta > 0):
        raise DomainError("alpha and beta must be positive")
    first = mellin_symbol_IB(s, OperatorParams(alpha, nu))
    second = mellin_symbol_IB(s + 2.0 * alpha, OperatorParams(beta, nu))
    return first * second / mellin_symbol_IB(s, OperatorParams(alpha + beta, nu))


# --------------------------------------------------------------------------
# Mellin transform of IB f computed from the operator values

INTEGRAL_MELLIN_SPEC = QuadSpec(rel_tol=1e-8, abs_tol=1e-13)
# nodes closer to 0 than this fraction of the support start contribute below round-off
_NODE_FLOOR = 1e-100


class _Memo:
    """Scalar memoisation of ``x -> IB f(x)``, shared between values of ``s``."""

    def __init__(self, f, p, spec):
        self.f, self.p, self.spec = f, p, spec
        self.cache = {}

    def __call__(self, x):
        x = float(x)
        if x not in self.cache:
            self.cache[x] = frac_bessel_integral(self.f, x, self.p, self.spec)
        return self.cache[x]

    def vector(self, xs):
        return np.array([self(v) for v in np.ravel(xs)]).reshape(np.shape(xs))


class IntegralMellin:
    """Numeric Mellin transform of ``x -> (IB^alpha f)(x)`` over ``(0, b]``.

    ``f`` must be compactly supported on ``[a, b]``.  Below ``a`` the operator
    output behaves like ``c0 + c1 x^(1 - nu)`` (``nu < 1``) or ``x^(1 - nu)``
    (``nu > 1``), so the piece ``(0, a)`` needs care:

    * ``nu >= 1``: tanh-sinh in ``x/a`` with the endpoint exponent
      ``s - 1 + 1 - nu``, using operator values directly;
    * ``nu < 1``: on ``(0, a/2]`` the value at 0 is split off,
      ``int_0^c x^(s-1) c0 dx = c0 c^s / s``, and the remainder ``IB f(x) - c0``
      is formed term by term from the connection formula of 2F1 at ``z = 1``,
      which keeps it accurate as ``x -> 0``.  The same formula is the analytic
      continuation of the transform to ``nu - 1 < s < 0``.
    """

    def __init__(self, f: TestFunction, p: OperatorParams, spec: QuadSpec = INTEGRAL_MELLIN_SPEC):
        if f.support is None:
            raise DomainError("IntegralMellin needs a compactly supported function")
        self.f, self.p, self.spec = f, p, spec
        self.values = _Memo(f, p, spec)
        self.a, self.b = f.support
        self._c0 = None

    # pieces on [a, b] and [c, a] are plain Gauss-Kronrod
    def _outer(self, s, lo):
        pts = [pt for pt in (self.a, *self.f.breakpoints) if lo < pt < self.b]
        return integrate_finite(lambda x: x ** (s - 1.0) * self.values.vector(x), lo, self.b,
                                self.spec, points=pts)[0]

    def _kernel_coefficients(self):
        p = self.p
        a_, b_, c_ = p.a, p.b, p.c
        big_a = gamma_signed(c_) * gamma_signed(c_ - a_ - b_) * rgamma(c_ - a_) * rgamma(c_ - b_)
        big_b = gamma_signed(c_) * gamma_signed(a_ + b_ - c_) * rgamma(a_) * rgamma(b_)
        return big_a, big_b

    def value_at_zero(self) -> float:
        """``lim_{x -> 0} IB f(x)`` for ``nu < 1``."""
        if self._c0 is None:
            big_a, _ = self._kernel_coefficients()
            p, f = self.p, self.f
            const = big_a / gamma_signed(p.c)
            self._c0 = integrate_finite(lambda y: const * (y / 2.0) ** (p.c - 1.0) * f(y),
                                        self.a, self.b, self.spec, points=f.breakpoints)[0]
        return self._c0

    def excess(self, x: float) -> float:
        """``IB f(x) - IB f(0)`` for ``0 < x <= a/2`` and ``nu < 1``, without cancellation."""
        p, f = self.p, self.f
        a_, b_, c_ = p.a, p.b, p.c
        big_a, big_b = self._kernel_coefficients()
        expo = (1.0 - p.nu) / 2.0

        def integrand(y):
            y = np.asarray(y, dtype=float)
            w = (x / y) ** 2
            log_one_minus = np.log1p(-w)
            shrink = np.expm1((c_ - 1.0) * log_one_minus)  # (1 - w)^(2a - 1) - 1
            e1 = hyp2f1_excess(a_, b_, a_ + b_ - c_ + 1.0, w)
            f2 = 1.0 + hyp2f1_excess(c_ - a_, c_ - b_, c_ - a_ - b_ + 1.0, w)
            regular = big_a * (shrink * (1.0 + e1) + e1)
            singular = big_b * w ** expo * np.exp((c_ - 1.0) * log_one_minus) * f2
            pref = (y / 2.0) ** (c_ - 1.0) / gamma_signed(c_)
            return pref * (regular + singular) * f(y)

        return integrate_finite(integrand, self.a, self.b, self.spec, points=f.breakpoints)[0]

    def __call__(self, s: float) -> float:
        p = self.p
        if not s > p.nu - 1.0:
            raise DomainError(f"Mellin transform of IB f needs s > nu - 1, got s={s}")
        if p.nu < 1.0:
            if _is_pole(s):
                raise DomainError(f"s={s} sits on a pole of the continued transform")
            c = 0.5 * self.a
            rel = self.spec.rel_tol

            # c^s int_0^1 t^(s - nu) [t^(nu - 1) excess(c t)] dt
            def near(t, tc):
                return np.array([tv ** (p.nu - 1.0) * self.excess(c * tv) if c * tv > 0 else 0.0
                                 for tv in np.ravel(t)]).reshape(np.shape(t))

            inner, _ = de_unit(near, s - p.nu, 0.0, rel_tol=rel)
            total = c ** s * float(inner) + self.value_at_zero() * c ** s / s
            return total + self._outer(s, c)
        if not s > 0:
            raise DomainError(f"Mellin transform of IB f needs s > 0 when nu >= 1, got s={s}")
        a = self.a
        lead = 1.0 - p.nu  # IB f(x) ~ x^(1 - nu), or log x at nu = 1

        def near(t, tc):
            out = np.zeros(np.shape(t))
            flat = out.reshape(-1)
            for i, tv in enumerate(np.ravel(t)):
                if tv > _NODE_FLOOR:
                    flat[i] = tv ** (-lead) * self.values(a * tv)
            return out

        inner, _ = de_unit(near, s - 1.0 + lead, 0.0, rel_tol=self.spec.rel_tol)
        return a ** s * float(inner) + self._outer(s, a)


def mellin_of_integral(f: TestFunction, s: float, p: OperatorParams,
                       spec: QuadSpec = INTEGRAL_MELLIN_SPEC) -> float:
    """``(IB^alpha f)*(s)`` computed numerically from operator values."""
    return IntegralMellin(f, p, spec)(s)


def mellin_sides(f: TestFunction, s: float, p: OperatorParams,
                  numeric: Optional[IntegralMellin] = None) -> tuple:
    """Return ``(numeric (IB f)*(s), symbol(s) * f*(s + 2 alpha))``."""
    numeric = numeric or IntegralMellin(f, p)
    lhs = numeric(s)
    rhs = mellin_symbol_IB(s, p, probe=True) * mellin_transform(f, s + 2.0 * p.alpha)
    return lhs, rhs


def derivative_sides(f: TestFunction, s: float, nu: float) -> tuple:
    """``(B_nu f)*(s)`` and ``symbol_DB(s) f*(s - 2)`` at ``alpha = 1``."""
    lhs = mellin_transform(bessel_applied(f, nu), s)
    rhs = mellin_symbol_DB(s, OperatorParams(1.0, nu)) * mellin_transform(f, s - 2.0)
    return lhs, rhs
