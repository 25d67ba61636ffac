"""Kernels of the fractional Bessel integral on the semiaxis.

``(IB^alpha f)(x) = integral_x^inf K(x, y) f(y) dy`` with

    K(x, y) = ((y^2 - x^2) / (2y))^(2 alpha - 1) / Gamma(2 alpha)
              * 2F1(alpha + (nu-1)/2, alpha; 2 alpha; 1 - x^2/y^2).

Four equivalent forms are provided: the hypergeometric one, the Legendre
form, the closed form at ``alpha = 1`` and the Liouville kernel at ``nu = 0``.
Each kernel function carries a ``regular_part(x, y, u, p)`` attribute with
``K = u**(2 alpha - 1) * regular_part`` for ``u = y^2 - x^2``; the quadrature
uses it to remove the diagonal singularity analytically.

All functions accept numpy arrays for ``y`` (and ``u``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .specfun import gamma_signed, hyp2f1, legendre_p_xm1

# |nu - 1| below this switches the alpha = 1 kernel to its logarithmic limit
NU_ONE_LIMIT = 1e-8


@dataclass(frozen=True)
class OperatorParams:
    """Order ``alpha > 0`` and singularity parameter ``nu >= 0``."""

    alpha: float
    nu: float = 0.0
    a: float = field(init=False, repr=False)
    b: float = field(init=False, repr=False)
    c: float = field(init=False, repr=False)

    def __post_init__(self):
        alpha, nu = float(self.alpha), float(self.nu)
        if not (math.isfinite(alpha) and alpha > 0):
            raise DomainError(f"alpha must be positive, got {self.alpha}")
        if not (math.isfinite(nu) and nu >= 0):
            raise DomainError(f"nu must be nonnegative, got {self.nu}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "nu", nu)
        # parameters of the kernel's 2F1
        object.__setattr__(self, "a", alpha + (nu - 1.0) / 2.0)
        object.__setattr__(self, "b", alpha)
        object.__setattr__(self, "c", 2.0 * alpha)


def _check(x, y):
    y = np.asarray(y, dtype=float)
    if not x > 0:
        raise DomainError(f"kernel needs x > 0, got x={x}")
    if np.any(y <= x):
        raise DomainError(f"kernel needs y > x (x={x})")
    return y


def _finish(value, like):
    return float(value) if np.ndim(like) == 0 else value


def _with_regular_part(regular):
    def attach(kernel):
        kernel.regular_part = regular
        return kernel
    return attach


def _hyp_regular(x, y, u, p):
    y = np.asarray(y, dtype=float)
    u = np.asarray(u, dtype=float)
    y2 = y * y
    z = u / y2
    omz = (x * x) / y2
    hyp = hyp2f1(p.a, p.b, p.c, z, omz=omz)
    return (2.0 * y) ** (1.0 - p.c) * hyp / gamma_signed(p.c)


@_with_regular_part(_hyp_regular)
def kernel_hyp(x, y, p: OperatorParams):
    """Hypergeometric form of the kernel, normalisation ``1/Gamma(2 alpha)`` included."""
    y = _check(x, y)
    u = (y - x) * (y + x)
    return _finish(u ** (p.c - 1.0) * _hyp_regular(x, y, u, p), y)


def _legendre_regular(x, y, u, p):
    y = np.asarray(y, dtype=float)
    u = np.asarray(u, dtype=float)
    # argument (x/y + y/x)/2 = 1 + (y - x)^2 / (2 x y), with y - x = u / (y + x)
    d = u / (y + x)
    xm1 = d * d / (2.0 * x * y)
    leg = legendre_p_xm1(0.5 - p.alpha, p.nu / 2.0 - 1.0, xm1)
    const = gamma_signed(p.alpha + 0.5) / gamma_signed(p.c)
    return const * u ** (0.5 - p.alpha) * (y / x) ** (p.nu / 2.0) * leg


@_with_regular_part(_legendre_regular)
def kernel_legendre(x, y, p: OperatorParams):
    """Kernel expressed through ``P^(1/2 - alpha)_(nu/2 - 1)((x/y + y/x)/2)``."""
    y = _check(x, y)
    u = (y - x) * (y + x)
    return _finish(u ** (p.c - 1.0) * _legendre_regular(x, y, u, p), y)


def _alpha1_over_u(x, y, u, nu):
    y = np.asarray(y, dtype=float)
    u = np.asarray(u, dtype=float)
    # log(y/x) computed from u so that it stays accurate as y -> x
    log_ratio = 0.5 * np.log1p(u / (x * x))
    if abs(nu - 1.0) < NU_ONE_LIMIT:
        # expm1(e L)/e = L (1 + e L/2 + (e L)^2/6 + ...), exact at nu = 1
        el = (nu - 1.0) * log_ratio
        k = y * log_ratio * (1.0 + 0.5 * el * (1.0 + el / 3.0))
    else:
        # y ((x/y)^(1-nu) - 1) / (nu - 1) = y * expm1((nu-1) log(y/x)) / (nu - 1)
        k = y * np.expm1((nu - 1.0) * log_ratio) / (nu - 1.0)
    return k / u


def _alpha1_regular(x, y, u, p):
    return _alpha1_over_u(x, y, u, p.nu)


@_with_regular_part(_alpha1_regular)
def kernel_alpha1(x, y, nu):
    """Closed form at ``alpha = 1``: ``y ((x/y)^(1-nu) - 1) / (nu - 1)``, ``y log(y/x)`` at ``nu = 1``."""
    if isinstance(nu, OperatorParams):
        nu = nu.nu
    if not nu >= 0:
        raise DomainError(f"nu must be nonnegative, got {nu}")
    y = _check(x, y)
    u = (y - x) * (y + x)
    return _finish(u * _alpha1_over_u(x, y, u, nu), y)


def _nu0_regular(x, y, u, p):
    y = np.asarray(y, dtype=float)
    # (y - x)^(2a-1) = u^(2a-1) (y + x)^(1-2a)
    return (y + x) ** (1.0 - p.c) / gamma_signed(p.c)


@_with_regular_part(_nu0_regular)
def kernel_nu0(x, y, alpha):
    """Liouville kernel ``(y - x)^(2 alpha - 1) / Gamma(2 alpha)``."""
    if isinstance(alpha, OperatorParams):
        alpha = alpha.alpha
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    y = _check(x, y)
    return _finish((y - x) ** (2.0 * alpha - 1.0) / gamma_signed(2.0 * alpha), y)


def _hyp_dx_regular(x, y, u, p):
    # d/dx of the kernel divided by u^(2 alpha - 2)
    y = np.asarray(y, dtype=float)
    u = np.asarray(u, dtype=float)
    y2 = y * y
    z = u / y2
    omz = (x * x) / y2
    f0 = hyp2f1(p.a, p.b, p.c, z, omz=omz)
    f1 = hyp2f1(p.a + 1.0, p.b + 1.0, p.c + 1.0, z, omz=omz) * (p.a * p.b / p.c)
    pref = (2.0 * y) ** (1.0 - p.c) / gamma_signed(p.c)
    return pref * (-2.0 * x) * ((p.c - 1.0) * f0 + u * f1 / y2)


def kernel_hyp_dx(x, y, p: OperatorParams):
    """Partial derivative of :func:`kernel_hyp` with respect to ``x``."""
    y = _check(x, y)
    u = (y - x) * (y + x)
    return _finish(u ** (p.c - 2.0) * _hyp_dx_regular(x, y, u, p), y)


kernel_hyp_dx.regular_part = _hyp_dx_regular

KERNELS = {
    "hyp": kernel_hyp,
    "legendre": kernel_legendre,
}
