import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracbessel.errors import AccuracyError, DomainError
from fracbessel.quad import (QuadSpec, de_unit, integrate_finite, integrate_lower_singular,
                             integrate_panels, integrate_unit_singular)


def test_smooth_integrals():
    assert integrate_finite(lambda t: 3 * t ** 2, 0, 1)[0] == pytest.approx(1.0, rel=1e-14)
    assert integrate_finite(np.sin, 0, math.pi)[0] == pytest.approx(2.0, rel=1e-14)
    assert integrate_finite(lambda t: 1 / t, 1, 2)[0] == pytest.approx(math.log(2), rel=1e-14)


@pytest.mark.parametrize("deg", range(0, 23, 3))
def test_single_panel_polynomial_exactness(deg):
    value, _ = integrate_panels(lambda t: (deg + 1) * t ** deg, 0.0, 1.0, (0.0, 1.0))
    assert value == pytest.approx(1.0, rel=1e-13)


def test_breakpoints_and_kinks():
    value, err = integrate_finite(lambda t: np.abs(t - 0.3), 0, 1, points=[0.3])
    assert value == pytest.approx(0.5 * (0.09 + 0.49), rel=1e-14)
    assert err < 1e-12


def test_panel_budget_raises():
    with pytest.raises(AccuracyError) as info:
        integrate_finite(lambda t: np.sin(1 / t), 1e-6, 1, QuadSpec(max_panels=8, rel_tol=1e-14))
    assert math.isfinite(info.value.value)


def test_frozen_layout_reproduces_adaptive_result():
    g = lambda t: np.exp(-t) * np.cos(5 * t)
    value, _, fractions = integrate_finite(g, 0.0, 3.0, return_panels=True)
    again, _ = integrate_panels(g, 0.0, 3.0, fractions)
    assert again == pytest.approx(value, rel=1e-15)


def test_rejects_reversed_interval():
    with pytest.raises(DomainError):
        integrate_finite(np.cos, 1.0, 0.0)


def test_quadspec_validation():
    with pytest.raises(DomainError):
        QuadSpec(rel_tol=0.0)
    with pytest.raises(DomainError):
        QuadSpec(singular_exponent=-1.5)
    assert QuadSpec().with_(rel_tol=1e-6).rel_tol == 1e-6


@pytest.mark.parametrize("p,q", [(-0.5, -0.5), (-0.9, -0.9), (0.3, 2.0), (-0.99, 0.0)])
def test_tanh_sinh_beta_integrals(p, q):
    ref = math.gamma(p + 1) * math.gamma(q + 1) / math.gamma(p + q + 2)
    value, _ = de_unit(lambda t, tc: np.ones_like(t), p, q)
    assert float(value) == pytest.approx(ref, rel=1e-12)


def test_tanh_sinh_beta_half():
    assert integrate_unit_singular(lambda t: 1.0 + 0 * t, -0.5, -0.5) == pytest.approx(math.pi, rel=1e-13)


def test_tanh_sinh_rejects_nonintegrable():
    with pytest.raises(DomainError):
        de_unit(lambda t, tc: t, -1.0, 0.0)


class Box:
    def __init__(self, a, b, breakpoints=()):
        self.support = (a, b)
        self.breakpoints = breakpoints

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        return np.where((y > self.support[0]) & (y < self.support[1]), 1.0, 0.0)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.05, 0.95), st.floats(0.1, 1.9))
def test_lower_singular_matches_antiderivative(mu, x):
    # int_x^3 (y - x)^(mu - 1) dy over the box [1, 3]
    f = Box(1.0, 3.0)
    got = integrate_lower_singular(lambda y, d: np.ones_like(y), x, f, mu - 1.0)
    start = max(x, 1.0)
    ref = ((3.0 - x) ** mu - (start - x) ** mu) / mu
    assert got == pytest.approx(ref, rel=1e-10)


def test_lower_singular_squared_distance():
    # int_x^2 (y^2 - x^2)^(-1/2) y dy = sqrt(4 - x^2)
    f = Box(0.5, 2.0)
    got = integrate_lower_singular(lambda y, d: y, 1.0, f, -0.5, squared=True)
    assert got == pytest.approx(math.sqrt(3.0), rel=1e-12)


def test_lower_singular_beyond_support_is_zero():
    assert integrate_lower_singular(lambda y, d: y, 3.5, Box(1, 3), -0.5) == 0.0


class Decaying:
    support = None
    scale = 1.0

    def __call__(self, y):
        return np.exp(-np.asarray(y, dtype=float))


def test_lower_singular_decaying_truncation():
    # int_x^inf (y - x)^(-1/2) e^(-y) dy = sqrt(pi) e^(-x)
    got = integrate_lower_singular(lambda y, d: np.exp(-y), 0.7, Decaying(), -0.5)
    assert got == pytest.approx(math.sqrt(math.pi) * math.exp(-0.7), rel=1e-10)
