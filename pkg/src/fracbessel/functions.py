"""Test functions on the semiaxis and sampled (interpolated) functions."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from numpy.polynomial import chebyshev as cheb

from .errors import AccuracyError, CapabilityError, DomainError


@dataclass(frozen=True)
class TestFunction:
    """A real function on (0, inf) with declared support and optional derivatives.

    ``support`` is ``(a, b)`` with ``0 < a < b`` for compactly supported
    functions, or ``None`` for functions that decay at infinity; ``scale`` then
    sets the first truncation width.  ``derivatives[k-1]`` is the k-th
    derivative.  Evaluation is vectorised and returns exactly zero outside a
    compact support.
    """

    __test__ = False  # not a pytest class

    func: Callable
    support: Optional[tuple] = None
    derivatives: tuple = ()
    label: str = ""
    scale: float = 1.0
    breakpoints: tuple = ()
    tail_exponent: Optional[float] = None
    decay: str = "exponential"

    def __post_init__(self):
        if self.support is not None:
            a, b = (float(s) for s in self.support)
            if not 0 < a < b < math.inf:
                raise DomainError(f"support must satisfy 0 < a < b < inf, got {self.support}")
            object.__setattr__(self, "support", (a, b))

    @property
    def compact(self) -> bool:
        return self.support is not None

    @property
    def order(self) -> int:
        return len(self.derivatives)

    def _masked(self, fn, y):
        y_arr = np.asarray(y, dtype=float)
        if self.support is None:
            out = np.asarray(fn(y_arr), dtype=float)
        else:
            a, b = self.support
            inside = (y_arr > a) & (y_arr < b)
            safe = np.where(inside, y_arr, 0.5 * (a + b))
            out = np.where(inside, fn(safe), 0.0)
        return float(out) if np.ndim(y) == 0 else out

    def __call__(self, y):
        return self._masked(self.func, y)

    def derivative(self, k: int):
        """The k-th derivative as a vectorised callable (``k = 0`` is the function)."""
        if k == 0:
            return self
        if k > self.order:
            raise CapabilityError(
                f"{self.label or 'function'} carries derivatives up to order {self.order}, "
                f"order {k} requested")
        fn = self.derivatives[k - 1]
        return lambda y: self._masked(fn, y)

    def interior_points(self, n: int = 10) -> np.ndarray:
        if self.support is None:
            return np.linspace(0.2, 3.0, n) * self.scale
        a, b = self.support
        return np.linspace(a, b, n + 2)[1:-1]


def check_derivatives(f: TestFunction, rel_tol: float = 1e-6, n_points: int = 10) -> float:
    """Compare each analytic derivative against a central difference of its predecessor.

    Returns the worst discrepancy, measured relative to the largest magnitude
    of the derivative over the sample points, and raises ``AssertionError``
    if it exceeds ``rel_tol``.
    """
    pts = f.interior_points(n_points)
    if f.support is not None:
        marks = sorted({*f.support, *f.breakpoints})
        feature = min(b - a for a, b in zip(marks[:-1], marks[1:]))
        # also probe between breakpoints so that narrow ramps are exercised
        pts = np.concatenate([pts, 0.5 * (np.array(marks[:-1]) + np.array(marks[1:]))])
    else:
        feature = f.scale
    h = 2e-3 * feature
    worst = 0.0
    for k in range(1, f.order + 1):
        prev = f.derivative(k - 1)
        # sixth-order central difference
        fd = (-prev(pts - 3 * h) + 9 * prev(pts - 2 * h) - 45 * prev(pts - h)
              + 45 * prev(pts + h) - 9 * prev(pts + 2 * h) + prev(pts + 3 * h)) / (60 * h)
        exact = f.derivative(k)(pts)
        ref = max(np.max(np.abs(exact)), np.max(np.abs(fd)), 1e-300)
        worst = max(worst, float(np.max(np.abs(fd - exact)) / ref))
    if worst > rel_tol:
        raise AssertionError(f"derivative chain of {f.label!r} inconsistent: {worst:.3e}")
    return worst


@dataclass(frozen=True)
class PiecewiseChebyshev:
    """Piecewise Chebyshev interpolant on consecutive panels."""

    edges: np.ndarray
    coefs: tuple = field(repr=False)

    def __call__(self, y):
        y_arr = np.atleast_1d(np.asarray(y, dtype=float))
        out = np.zeros_like(y_arr)
        idx = np.searchsorted(self.edges, y_arr, side="right") - 1
        idx = np.clip(idx, 0, len(self.coefs) - 1)
        inside = (y_arr >= self.edges[0]) & (y_arr <= self.edges[-1])
        for k in np.unique(idx[inside]):
            sel = inside & (idx == k)
            lo, hi = self.edges[k], self.edges[k + 1]
            s = (2.0 * y_arr[sel] - lo - hi) / (hi - lo)
            out[sel] = cheb.chebval(s, self.coefs[k])
        return float(out[0]) if np.ndim(y) == 0 else out


def sample_function(fn: Callable[[float], float], lo: float, hi: float, *,
                    rel_tol: float = 1e-11, abs_tol: float = 1e-15, degree: int = 15,
                    points: Sequence[float] = (), max_panels: int = 400,
                    min_width: float = 1e-9) -> PiecewiseChebyshev:
    """Adaptively sample a scalar function on ``[lo, hi]`` by piecewise Chebyshev interpolation.

    Each panel holds a degree-``degree`` interpolant at Chebyshev points of
    the first kind; panels whose trailing coefficients exceed the tolerance
    are bisected.
    """
    if degree < 6:
        raise DomainError("interpolation order must be at least 6")
    cuts = sorted({lo, hi, *(p for p in points if lo < p < hi)})
    pending = list(zip(cuts[:-1], cuts[1:]))
    done = {}
    scale = 0.0

    def fit(a, b):
        def mapped(s):
            ys = 0.5 * (a + b) + 0.5 * (b - a) * s
            return np.array([fn(float(v)) for v in ys])
        return cheb.chebinterpolate(mapped, degree)

    while pending:
        a, b = pending.pop()
        c = fit(a, b)
        scale = max(scale, float(np.max(np.abs(c))))
        tail = float(np.max(np.abs(c[-3:])))
        if tail <= max(abs_tol, rel_tol * scale) or (b - a) <= min_width:
            done[(a, b)] = c
            continue
        if len(done) + len(pending) + 2 > max_panels:
            raise AccuracyError(f"sampling needs more than {max_panels} panels")
        m = 0.5 * (a + b)
        pending.extend([(a, m), (m, b)])
    edges = np.array(sorted({k[0] for k in done} | {hi}))
    coefs = tuple(done[(edges[i], edges[i + 1])] for i in range(len(edges) - 1))
    return PiecewiseChebyshev(edges, coefs)


def sampled_test_function(fn, lo, hi, *, label="sampled", **kwargs) -> TestFunction:
    """Wrap :func:`sample_function` as a compactly supported :class:`TestFunction`.

    The returned function is zero outside ``[lo, hi]``; it is meant for
    operators that only look at ``y >= lo``.
    """
    interp = sample_function(fn, lo, hi, **kwargs)
    return TestFunction(interp, support=(lo, hi), label=label,
                        breakpoints=tuple(interp.edges[1:-1]))
