"""Deterministic quadrature for the fractional Bessel integrals.

Three tools live here:

* ``integrate_finite``: globally adaptive bisection with the 7/15-point
  Gauss-Kronrod pair and the QUADPACK error heuristic.
* ``integrate_unit_singular``: tanh-sinh (double exponential) quadrature on
  (0, 1) for integrands with algebraic endpoint singularities.
* ``integrate_kernel_against``: the operator integral over ``y > x`` with the
  change of variable ``v = (y**2 - x**2)**(2*alpha)`` that absorbs the
  algebraic factor of the kernel at the diagonal.

Every integrand is called with a numpy array of nodes.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import AccuracyError, DomainError

# 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# nodes ordered -x0..-x6, 0, x6..x0
GK_NODES = np.concatenate([-_XGK[:7], [0.0], _XGK[6::-1]])
GK_WEIGHTS = np.concatenate([_WGK[:7], [_WGK[7]], _WGK[6::-1]])
_G_WEIGHTS = np.zeros(15)
_G_WEIGHTS[[1, 3, 5]] = _WG[:3]
_G_WEIGHTS[7] = _WG[3]
_G_WEIGHTS[[13, 11, 9]] = _WG[:3]

_EPS = np.finfo(float).eps
_TINY = np.finfo(float).tiny


@dataclass(frozen=True)
class QuadSpec:
    """Tolerances and budget for one quadrature call."""

    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_panels: int = 4096
    singular_exponent: Optional[float] = None

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise DomainError("rel_tol and abs_tol must be positive")
        if self.max_panels < 1:
            raise DomainError("max_panels must be at least 1")
        if self.singular_exponent is not None and not self.singular_exponent > -1:
            raise DomainError(
                f"singular_exponent={self.singular_exponent} is not integrable (needs > -1)")

    def with_(self, **changes) -> "QuadSpec":
        values = dict(rel_tol=self.rel_tol, abs_tol=self.abs_tol,
                      max_panels=self.max_panels,
                      singular_exponent=self.singular_exponent)
        values.update(changes)
        return QuadSpec(**values)


DEFAULT_SPEC = QuadSpec()


def _gk15_batch(g, los, his):
    """Apply the Gauss-Kronrod pair to many panels in a single call of ``g``."""
    los = np.asarray(los, dtype=float)
    his = np.asarray(his, dtype=float)
    centre = 0.5 * (los + his)
    half = 0.5 * (his - los)
    nodes = centre[:, None] + half[:, None] * GK_NODES[None, :]
    fv = np.asarray(g(nodes.ravel()), dtype=float).reshape(nodes.shape)
    if not np.all(np.isfinite(fv)):
        bad = nodes[~np.isfinite(fv)][0]
        raise DomainError(f"integrand is not finite at {bad!r}")
    resk = fv @ GK_WEIGHTS
    resg = fv @ _G_WEIGHTS
    mean = 0.5 * resk
    resabs = np.abs(fv) @ GK_WEIGHTS
    resasc = np.abs(fv - mean[:, None]) @ GK_WEIGHTS
    err = np.abs((resk - resg) * half)
    resasc = resasc * np.abs(half)
    resabs = resabs * np.abs(half)
    scaled = np.where((resasc != 0) & (err != 0),
                      resasc * np.minimum(1.0, (200.0 * err / np.where(resasc == 0, 1, resasc)) ** 1.5),
                      err)
    floor = np.where(resabs > _TINY / (50 * _EPS), 50 * _EPS * resabs, 0.0)
    return resk * half, np.maximum(scaled, floor), resabs


def _vectorize(g, vectorized):
    if vectorized:
        return g
    return lambda t: np.fromiter((g(float(ti)) for ti in t), dtype=float, count=len(t))


def integrate_finite(g: Callable, lo: float, hi: float, spec: QuadSpec = DEFAULT_SPEC, *,
                     points: Sequence[float] = (), vectorized: bool = True,
                     return_panels: bool = False):
    """Adaptive Gauss-Kronrod quadrature of ``g`` over ``[lo, hi]``.

    Returns ``(value, err_est)``; with ``return_panels`` a third element holds
    the final panel boundaries as fractions of ``[lo, hi]``, which can be fed
    back through :func:`integrate_panels` to reuse the same layout.

    Raises :class:`AccuracyError` when ``spec.max_panels`` is exhausted.
    """
    if not lo < hi:
        raise DomainError(f"empty or reversed interval [{lo}, {hi}]")
    g = _vectorize(g, vectorized)
    cuts = sorted({lo, hi, *(pt for pt in points if lo < pt < hi)})
    vals, errs, absvals = _gk15_batch(g, cuts[:-1], cuts[1:])
    heap = [(-e, a, b, v) for a, b, v, e in zip(cuts[:-1], cuts[1:], vals, errs)]
    heapq.heapify(heap)
    total = float(np.sum(vals))
    total_err = float(np.sum(errs))
    # integral of |g|: cancellation makes errors below ~eps times this unreachable
    roundoff = 100 * _EPS * float(np.sum(absvals))

    def done():
        return total_err <= max(spec.abs_tol, spec.rel_tol * abs(total), roundoff)

    while not done():
        if len(heap) >= spec.max_panels:
            raise AccuracyError(
                f"panel budget {spec.max_panels} exhausted on [{lo}, {hi}]",
                total, total_err)
        neg_err, a, b, v = heapq.heappop(heap)
        m = 0.5 * (a + b)
        if not (a < m < b) or (b - a) <= 4 * _EPS * max(abs(a), abs(b)):
            raise AccuracyError(f"panel [{a}, {b}] cannot be bisected further",
                                total, total_err)
        (v1, v2), (e1, e2), _ = _gk15_batch(g, [a, m], [m, b])
        total += v1 + v2 - v
        total_err += e1 + e2 + neg_err
        heapq.heappush(heap, (-e1, a, m, v1))
        heapq.heappush(heap, (-e2, m, b, v2))
        if len(heap) % 64 == 0:
            # resynchronise running sums against drift
            total = math.fsum(item[3] for item in heap)
            total_err = math.fsum(-item[0] for item in heap)

    value = math.fsum(item[3] for item in heap)
    err = math.fsum(-item[0] for item in heap)
    if return_panels:
        bounds = sorted({item[1] for item in heap} | {hi})
        width = hi - lo
        fractions = tuple((bd - lo) / width for bd in bounds)
        return value, err, fractions
    return value, err


def integrate_panels(g: Callable, lo: float, hi: float, fractions: Sequence[float], *,
                     vectorized: bool = True):
    """Non-adaptive Gauss-Kronrod sum on a frozen panel layout.

    ``fractions`` are panel boundaries relative to ``[lo, hi]`` as returned by
    ``integrate_finite(..., return_panels=True)``.  The quadrature error is then
    a smooth function of ``lo`` and ``hi``, which finite differences need.
    """
    g = _vectorize(g, vectorized)
    fr = np.asarray(fractions, dtype=float)
    bounds = lo + (hi - lo) * fr
    vals, errs, _ = _gk15_batch(g, bounds[:-1], bounds[1:])
    return math.fsum(vals), math.fsum(errs)


# --------------------------------------------------------------------------
# tanh-sinh on (0, 1)

_DE_H0 = 1.0
_DE_MAX_LEVEL = 9


def _de_tau_max(p_exp, q_exp):
    weakest = min(p_exp + 1.0, q_exp + 1.0, 1.0)
    return float(np.clip(math.log(140.0 / (math.pi * weakest)), 3.5, 9.0))


def _de_points(tau):
    s = np.pi * np.sinh(tau)
    log_t = -np.logaddexp(0.0, -s)
    log_tc = -np.logaddexp(0.0, s)
    return np.exp(log_t), np.exp(log_tc), log_t, log_tc, np.pi * np.cosh(tau)


def de_unit(integrand: Callable, p_exp: float, q_exp: float, rel_tol: float = 1e-12,
            abs_tol: float = 1e-300, min_level: int = 3, max_level: int = _DE_MAX_LEVEL):
    """Tanh-sinh quadrature of ``t**p_exp * (1-t)**q_exp * integrand(t, 1-t)``.

    ``integrand`` receives ``t`` and its complement ``1 - t`` (the latter
    computed without cancellation) as arrays of the same shape as the node
    vector, possibly broadcast against a leading batch axis.  The result has
    the broadcast shape of the integrand minus the node axis.

    Returns ``(value, err_est)``, where the error is the change between the
    last two refinement levels.
    """
    if not (p_exp > -1 and q_exp > -1):
        raise DomainError(f"endpoint exponents ({p_exp}, {q_exp}) are not integrable")
    tau_max = _de_tau_max(p_exp, q_exp)
    h = _DE_H0
    k = np.arange(-math.floor(tau_max / h), math.floor(tau_max / h) + 1)

    def weighted_sum(tau):
        t, tc, log_t, log_tc, jac = _de_points(tau)
        w = jac * np.exp((p_exp + 1.0) * log_t + (q_exp + 1.0) * log_tc)
        vals = np.asarray(integrand(t, tc), dtype=float)
        return np.sum(vals * w, axis=-1)

    acc = weighted_sum(k * h)
    prev = acc * h
    err = np.inf
    for level in range(1, max_level + 1):
        h *= 0.5
        n = math.floor(tau_max / h)
        odd = np.arange(-n, n + 1)
        odd = odd[odd % 2 != 0]
        acc = acc + weighted_sum(odd * h)
        cur = acc * h
        diff = np.abs(cur - prev)
        err = float(np.max(diff))
        prev = cur
        if level >= min_level and np.all(diff <= np.maximum(abs_tol, rel_tol * np.abs(cur))):
            return cur, err
    raise AccuracyError("tanh-sinh refinement did not converge", prev, err)


def integrate_unit_singular(g: Callable, p_exp: float, q_exp: float,
                            spec: QuadSpec = DEFAULT_SPEC):
    """Integrate ``t**p_exp * (1-t)**q_exp * g(t)`` over ``(0, 1)``.

    The double exponential substitution ``t = 1/(1 + exp(-pi*sinh(tau)))``
    makes algebraic endpoint singularities harmless; ``g`` should be smooth on
    the open interval.  Returns the value only.
    """
    value, _ = de_unit(lambda t, tc: g(t), p_exp, q_exp,
                       rel_tol=spec.rel_tol, abs_tol=spec.abs_tol)
    return float(value)


# --------------------------------------------------------------------------
# integrals over y > x with an algebraic singularity at y = x


def _support_of(f):
    support = getattr(f, "support", None)
    return None if support is None else (float(support[0]), float(support[1]))


def integrate_lower_singular(regular: Callable, x: float, f, exponent: float,
                             spec: QuadSpec = DEFAULT_SPEC, *, squared: bool = False,
                             layout=None, full_output: bool = False):
    """Integrate ``d(y)**exponent * regular(y, d(y))`` over ``y`` in ``supp f`` with ``y > x``.

    ``d(y) = y - x`` or, with ``squared``, ``d(y) = y**2 - x**2``.  On the
    panel adjacent to the lower end the variable ``v = d**(exponent + 1)``
    turns the algebraic factor into a constant; the rest of the range is
    integrated directly.  ``regular`` is called with arrays ``y`` and ``d``
    where ``d`` is exact in the substituted panel (no ``y**2 - x**2``
    cancellation).

    ``f`` supplies ``support`` (``(a, b)`` or ``None`` for decaying
    functions), and optionally ``scale``, ``breakpoints`` and
    ``tail_exponent``.
    """
    power = exponent + 1.0
    if not power > 0:
        raise DomainError(f"exponent {exponent} is not integrable at y = x")
    support = _support_of(f)
    if support is not None and x >= support[1]:
        return (0.0, 0.0, ()) if full_output else 0.0
    start = x if support is None else max(x, support[0])
    breaks = [float(b) for b in getattr(f, "breakpoints", ()) or ()]

    if squared:
        def dist(y):
            return (y - x) * (y + x)

        def inv(d):
            return np.sqrt(x * x + d)

        def ddy(y):
            return 2.0 * y
    else:
        def dist(y):
            return y - x

        def inv(d):
            return x + d

        def ddy(y):
            return np.ones_like(y)

    def substituted(v):
        d = v ** (1.0 / power)
        y = inv(d)
        return regular(y, d) / (power * ddy(y))

    def direct(y):
        d = dist(y)
        return d ** exponent * regular(y, d)

    pieces = []  # (kind, lo, hi, points)
    if support is not None:
        mid = start + 0.5 * (support[1] - start)
        v_lo, v_hi = dist(start) ** power, dist(mid) ** power
        pts = [dist(b) ** power for b in breaks if start < b < mid]
        pieces.append(("sub", v_lo, v_hi, pts))
        pieces.append(("dir", mid, support[1], [b for b in breaks if mid < b < support[1]]))
    else:
        width = float(getattr(f, "scale", 1.0) or 1.0)
        first = start + width
        pieces.append(("sub", dist(start) ** power, dist(first) ** power, []))

    n_fixed = len(pieces)
    local_abs = spec.abs_tol / (n_fixed + 1)
    local = spec.with_(abs_tol=local_abs)
    total = 0.0
    total_err = 0.0
    new_layout = []

    def run(kind, lo, hi, pts, idx):
        fn = substituted if kind == "sub" else direct
        if layout is not None:
            return integrate_panels(fn, lo, hi, layout[idx]) + (layout[idx],)
        return integrate_finite(fn, lo, hi, local, points=pts, return_panels=True)

    for idx, (kind, lo, hi, pts) in enumerate(pieces):
        if not lo < hi:
            new_layout.append((0.0, 1.0))
            continue
        val, err, fr = run(kind, lo, hi, pts, idx)
        total += val
        total_err += err
        new_layout.append(fr)

    if support is None:
        # decaying input: extend by doubling widths until the newest piece is negligible
        lo = start + width
        step = width
        idx = n_fixed
        n_tail = None if layout is None else len(layout) - n_fixed
        count = 0
        while True:
            hi = lo + step
            val, err, fr = run("dir", lo, hi, [], idx)
            total += val
            total_err += err
            new_layout.append(fr)
            count += 1
            idx += 1
            lo, step = hi, 2.0 * step
            if n_tail is not None:
                if count >= n_tail:
                    break
            elif abs(val) <= max(spec.abs_tol, spec.rel_tol * abs(total)) and count >= 2:
                break
            if count > 200:
                raise AccuracyError("truncation doubling did not settle", total, total_err)

    if full_output:
        return total, total_err, tuple(new_layout)
    return total


def integrate_kernel_against(f, x: float, kernel: Callable, p, spec: QuadSpec = DEFAULT_SPEC, *,
                             layout=None, full_output: bool = False):
    """Return ``integral over y > x of kernel(x, y, p) * f(y) dy``.

    ``kernel`` must carry a ``regular_part(x, y, u, p)`` attribute with
    ``kernel = u**(2*alpha - 1) * regular_part`` for ``u = y**2 - x**2``
    (all kernels in :mod:`fracbessel.kernels` do).  Without it the
    algebraic factor is divided out numerically.
    """
    if not x > 0:
        raise DomainError(f"x must be positive, got {x}")
    expo = 2.0 * p.alpha - 1.0
    reg = getattr(kernel, "regular_part", None)
    if reg is None:
        def reg(xx, y, u, pp):
            return kernel(xx, y, pp) * u ** (-expo)

    def regular(y, u):
        return reg(x, y, u, p) * f(y)

    return integrate_lower_singular(regular, x, f, expo, spec, squared=True,
                                    layout=layout, full_output=full_output)
