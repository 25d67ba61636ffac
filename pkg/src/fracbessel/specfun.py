"""Real special functions used by the kernels.

Gamma values are handled in log space with an explicit sign, the Gauss
hypergeometric function is evaluated either by its power series or by the
Euler integral, and the associated Legendre function of the first kind is
obtained from the hypergeometric function for arguments ``x >= 1``.

The hypergeometric routines accept numpy arrays for ``z`` and broadcast.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import AccuracyError, DomainError
from .quad import de_unit

SERIES_REL_STOP = 1e-17
SERIES_MAX_TERMS = 5000
# z <= SERIES_CROSSOVER uses the power series, above it the Euler integral
SERIES_CROSSOVER = 0.5
# below this value of 1 - z the Euler integral is split at 1 - t = 1 - z
_SMALL_OMEGA = 1e-2
_EULER_REL_TOL = 1e-14
# endpoint exponents closer to -1 than this are left to the power series
_EULER_MIN_MARGIN = 0.05


def _is_pole(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def ln_gamma_signed(x: float) -> tuple[float, int]:
    """Return ``(log|Gamma(x)|, sign(Gamma(x)))``.

    Arguments below 1/2 go through the reflection formula
    ``Gamma(x) Gamma(1-x) = pi / sin(pi x)``.
    """
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"gamma argument must be finite, got {x}")
    if _is_pole(x):
        raise DomainError(f"gamma function has a pole at x={x:g}")
    if x >= 0.5:
        return math.lgamma(x), 1
    # sin(pi x) = (-1)^k sin(pi (x - k)) with k the nearest integer; x - k is exact
    k = round(x)
    s = math.sin(math.pi * (x - k)) * (-1 if k % 2 else 1)
    log_mag = math.log(math.pi) - math.log(abs(s)) - math.lgamma(1.0 - x)
    return log_mag, (1 if s > 0 else -1)


def gamma_signed(x: float) -> float:
    lg, sign = ln_gamma_signed(x)
    return sign * math.exp(lg)


def rgamma(x: float) -> float:
    """``1/Gamma(x)``, zero at the poles."""
    if _is_pole(float(x)):
        return 0.0
    lg, sign = ln_gamma_signed(x)
    return sign * math.exp(-lg)


@dataclass(frozen=True)
class GammaRatio:
    """The bracket ``Gamma[num_1, num_2, ... / den_1, den_2, ...]``."""

    numerator_args: tuple
    denominator_args: tuple

    def __init__(self, numerator_args: Sequence[float], denominator_args: Sequence[float] = ()):
        num = tuple(float(a) for a in numerator_args)
        den = tuple(float(a) for a in denominator_args)
        for a in num + den:
            if _is_pole(a):
                raise DomainError(f"gamma ratio argument {a:g} is a pole")
        object.__setattr__(self, "numerator_args", num)
        object.__setattr__(self, "denominator_args", den)

    def log_abs(self) -> tuple[float, int]:
        """Log magnitude and sign of the ratio."""
        terms = []
        sign = 1
        for a in self.numerator_args:
            lg, sg = ln_gamma_signed(a)
            terms.append(lg)
            sign *= sg
        for a in self.denominator_args:
            lg, sg = ln_gamma_signed(a)
            terms.append(-lg)
            sign *= sg
        return math.fsum(terms), sign

    def value(self) -> float:
        lg, sign = self.log_abs()
        return sign * math.exp(lg)


def gamma_ratio_eval(r: GammaRatio) -> float:
    """Evaluate ``prod Gamma(num) / prod Gamma(den)`` by summing signed log-gammas."""
    return r.value()


# --------------------------------------------------------------------------
# Gauss hypergeometric function


def _gauss_series(a, b, c, z):
    z = np.asarray(z, dtype=float)
    term = np.ones_like(z)
    total = np.ones_like(z)
    for n in range(SERIES_MAX_TERMS):
        term = term * ((a + n) * (b + n) / ((c + n) * (n + 1.0))) * z
        total = total + term
        if np.all(np.abs(term) <= SERIES_REL_STOP * np.abs(total)):
            return total
    raise AccuracyError(
        f"2F1({a}, {b}; {c}; z) series did not converge in {SERIES_MAX_TERMS} terms",
        total, float(np.max(np.abs(term))))


def hyp2f1_excess(a: float, b: float, c: float, z):
    """``2F1(a, b; c; z) - 1`` summed from the first series term, so small ``z`` keeps full
    relative accuracy.  Meant for ``|z| <= 1/2``."""
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=float))
    term = np.ones_like(z)
    total = np.zeros_like(z)
    for n in range(SERIES_MAX_TERMS):
        term = term * ((a + n) * (b + n) / ((c + n) * (n + 1.0))) * z
        total = total + term
        if np.all(np.abs(term) <= SERIES_REL_STOP * np.abs(total)):
            break
    else:
        raise AccuracyError(f"2F1({a}, {b}; {c}; z) - 1 did not converge", total,
                            float(np.max(np.abs(term))))
    return float(total[0]) if scalar else total


def _euler_regular(a, b, c, z, omz):
    # integrand t^(b-1) (1-t)^(c-b-1) (1 - z t)^(-a) with 1 - z t = (1-t) + omz t
    def integrand(t, tc):
        return (tc + omz[:, None] * t) ** (-a)

    value, _ = de_unit(integrand, b - 1.0, c - b - 1.0, rel_tol=_EULER_REL_TOL)
    return value


def _euler_near_one(a, b, c, omz):
    # Split r = 1 - t at r = omz.  For r < omz put r = omz*rho; for r > omz put
    # r = omz**(1 - theta), which spreads the decades between omz and 1 evenly.
    q = c - b - 1.0
    omz_col = omz[:, None]
    big_l = -np.log(omz_col)

    def inner(rho, rho_c):
        return ((1.0 - omz_col * rho) ** (b - 1.0)
                * (1.0 + rho * (1.0 - omz_col)) ** (-a))

    piece_a, _ = de_unit(inner, q, 0.0, rel_tol=_EULER_REL_TOL)
    piece_a = piece_a * omz ** (q + 1.0 - a)

    def outer(theta, theta_c):
        lt = big_l * theta_c
        r = np.exp(-lt)
        # (1 - r) / theta_c, finite as theta_c -> 0
        one_minus_r = -np.expm1(-lt)
        ratio = np.where(theta_c > 0, one_minus_r / np.where(theta_c > 0, theta_c, 1.0), big_l)
        # r^(q+1) (omz + r (1-omz))^(-a) assembled in log space
        log_mix = np.logaddexp(np.log(omz_col), -lt + np.log1p(-omz_col))
        return ratio ** (b - 1.0) * np.exp((q + 1.0) * (-lt) - a * log_mix) * big_l

    piece_b, _ = de_unit(outer, 0.0, b - 1.0, rel_tol=_EULER_REL_TOL)
    return piece_a + piece_b


def _euler(a, b, c, z, omz):
    if not c > b > 0:
        if c > a > 0:
            a, b = b, a
        else:
            raise DomainError(f"Euler integral needs c > b > 0, got a={a}, b={b}, c={c}")
    norm = math.exp(math.lgamma(c) - math.lgamma(b) - math.lgamma(c - b))
    out = np.empty_like(z)
    small = omz < _SMALL_OMEGA
    if np.any(~small):
        out[~small] = _euler_regular(a, b, c, z[~small], omz[~small])
    if np.any(small):
        out[small] = _euler_near_one(a, b, c, omz[small])
    return norm * out


def euler_applicable(a: float, b: float, c: float) -> bool:
    return c > b > 0 or c > a > 0


def _euler_margin(a, b, c):
    # smallest of the Euler exponents plus one, for the better of the two orderings
    return max(min(t, c - t) for t in (a, b) if c > t > 0)


def hyp2f1(a: float, b: float, c: float, z, *, omz=None, method: str = "auto"):
    """Gauss hypergeometric function ``2F1(a, b; c; z)`` for ``0 <= z < 1``.

    ``method`` is ``"auto"`` (power series up to ``z = 1/2``, Euler integral
    above), ``"series"`` or ``"euler"``.  ``omz`` optionally supplies
    ``1 - z`` computed by the caller without cancellation, which keeps the
    Euler integral accurate as ``z`` approaches 1.
    """
    if not c > 0:
        raise DomainError(f"2F1 needs c > 0, got c={c}")
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=float))
    if omz is None:
        omz = 1.0 - z
    else:
        omz = np.broadcast_to(np.asarray(omz, dtype=float), z.shape).astype(float)
    if np.any(z < 0) or np.any(omz <= 0):
        bad = z[(z < 0) | (omz <= 0)][0]
        raise DomainError(f"2F1 argument z={bad!r} outside [0, 1)")
    if a == 0 or b == 0:
        out = np.ones_like(z)
    elif method == "series":
        out = _gauss_series(a, b, c, z)
    elif method == "euler":
        out = _euler(a, b, c, z, omz)
    elif method == "auto":
        out = np.empty_like(z)
        low = z <= SERIES_CROSSOVER
        if np.any(low):
            out[low] = _gauss_series(a, b, c, z[low])
        if np.any(~low):
            if euler_applicable(a, b, c):
                out[~low] = _euler(a, b, c, z[~low], omz[~low])
            else:
                out[~low] = _gauss_series(a, b, c, z[~low])
    else:
        raise ValueError(f"unknown method {method!r}")
    return float(out[0]) if scalar else out


def hyp2f1_nonpos(a: float, b: float, c: float, z):
    """``2F1(a, b; c; z)`` for ``z <= 0`` through a Pfaff transformation.

    Both Pfaff forms map ``z`` to ``w = z/(z-1)`` in ``[0, 1)``; a terminating
    series is preferred, otherwise the form whose series has no sign changes
    (or smaller parameters) is summed.
    """
    if not c > 0:
        raise DomainError(f"2F1 needs c > 0, got c={c}")
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=float))
    if np.any(z > 0):
        raise DomainError("hyp2f1_nonpos needs z <= 0")
    w = z / (z - 1.0)
    one_minus_z = 1.0 - z
    # variant A: (1-z)^(-a) F(a, c-b; c; w); variant B: (1-z)^(-b) F(c-a, b; c; w)
    variants = [(a, c - b, a), (c - a, b, b)]

    def rank(v):
        top1, top2, _ = v
        terminating = any(_is_pole(t) for t in (top1, top2))
        same_sign = (top1 > 0 and top2 > 0) or (top1 < 0 and top2 < 0)
        return (not terminating, not same_sign, abs(top1 * top2))

    top1, top2, pref = min(variants, key=rank)
    out = np.empty_like(z)
    far = w > SERIES_CROSSOVER
    if np.any(far) and not any(_is_pole(t) for t in (top1, top2)):
        # close to w = 1 the series crawls; use the Euler integral with 1 - w = 1/(1 - z)
        usable = [v for v in variants if euler_applicable(v[0], v[1], c)
                  and _euler_margin(v[0], v[1], c) >= _EULER_MIN_MARGIN]
        value = None
        if usable:
            # the milder the endpoint exponents of the Euler integrand, the better
            e1, e2, epref = max(usable, key=lambda v: _euler_margin(v[0], v[1], c))
            try:
                value = (one_minus_z[far] ** (-epref)
                         * _euler(e1, e2, c, w[far], 1.0 / one_minus_z[far]))
            except (AccuracyError, DomainError):
                value = None
        if value is None:
            value = one_minus_z[far] ** (-pref) * _gauss_series(top1, top2, c, w[far])
        out[far] = value
    else:
        far = np.zeros_like(far)
    near = ~far
    if np.any(near):
        out[near] = one_minus_z[near] ** (-pref) * _gauss_series(top1, top2, c, w[near])
    return float(out[0]) if scalar else out


# --------------------------------------------------------------------------
# associated Legendre function of the first kind


def legendre_p_xm1(mu: float, lam: float, xm1):
    """``P^mu_lam(1 + xm1)`` with ``xm1 = x - 1 >= 0`` supplied directly."""
    if _is_pole(1.0 - mu):
        raise DomainError(f"Legendre order mu={mu} puts a pole in Gamma(1 - mu)")
    scalar = np.ndim(xm1) == 0
    xm1 = np.atleast_1d(np.asarray(xm1, dtype=float))
    if np.any(xm1 < 0):
        raise DomainError("legendre_p needs x >= 1")
    if np.any(xm1 == 0) and mu > 0:
        raise DomainError("legendre_p at x = 1 needs mu <= 0")
    inv_gamma = 1.0 / gamma_signed(1.0 - mu)
    hyp = hyp2f1_nonpos(-lam, lam + 1.0, 1.0 - mu, -xm1 / 2.0)
    with np.errstate(divide="ignore"):
        if mu == 0:
            pref = np.ones_like(xm1)
        else:
            pref = np.where(xm1 > 0, ((xm1 + 2.0) / np.where(xm1 > 0, xm1, 1.0)) ** (mu / 2.0), 0.0)
    out = inv_gamma * pref * hyp
    return float(out[0]) if scalar else out


def legendre_p(mu: float, lam: float, x):
    """Associated Legendre function of the first kind ``P^mu_lam(x)``, ``x >= 1``.

    Uses ``P = ((x+1)/(x-1))**(mu/2) / Gamma(1-mu) * 2F1(-lam, lam+1; 1-mu; (1-x)/2)``.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x < 1):
        raise DomainError("legendre_p is only implemented for x >= 1")
    return legendre_p_xm1(mu, lam, x - 1.0)
