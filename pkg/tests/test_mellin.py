import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from fracbessel import corpus
from fracbessel.errors import DomainError
from fracbessel.kernels import OperatorParams
from fracbessel.mellin import (IntegralMellin, MellinSymbol, derivative_sides,
                               mellin_symbol_DB, mellin_symbol_IB, mellin_transform,
                               symbol_semigroup_check, mellin_sides)
from fracbessel.operators import frac_bessel_integral


class Box:
    def __init__(self, a, b):
        self.support = (a, b)
        self.breakpoints = ()
        self.scale = 1.0

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        return np.where((y > self.support[0]) & (y < self.support[1]), 1.0, 0.0)


# --- transforms ----------------------------------------------------------------


@pytest.mark.parametrize("s", [-1.5, 0.5, 1.0, 3.0])
def test_indicator_transform(s):
    assert mellin_transform(Box(1.0, 2.0), s) == pytest.approx((2 ** s - 1) / s, rel=1e-13)


def test_indicator_transform_at_zero():
    assert mellin_transform(Box(1.0, 2.0), 0.0) == pytest.approx(math.log(2), rel=1e-13)


@pytest.mark.parametrize("s", [0.5, 1.0, 2.0, 3.5])
def test_gaussian_transform(s):
    assert mellin_transform(corpus.get("gaussian"), s) == pytest.approx(
        0.5 * math.gamma(s / 2), rel=1e-10)


def test_decaying_transform_domain():
    with pytest.raises(DomainError):
        mellin_transform(corpus.get("gaussian"), 0.0)


# --- symbols -------------------------------------------------------------------


def test_symbol_examples():
    assert mellin_symbol_IB(2.0, OperatorParams(0.5, 0.0)) == pytest.approx(0.5, rel=1e-15)
    assert mellin_symbol_DB(4.0, OperatorParams(1.0, 0.0)) == pytest.approx(6.0, rel=1e-15)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.05, 3.0), st.floats(0.01, 8.0))
def test_nu0_symbol_is_gamma_ratio(alpha, s):
    # duplication collapses the ratio to Gamma(s) / Gamma(s + 2 alpha)
    assert mellin_symbol_IB(s, OperatorParams(alpha, 0.0)) == pytest.approx(
        math.gamma(s) / math.gamma(s + 2 * alpha), rel=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.0, 6.0), st.floats(0.1, 8.0))
def test_first_order_derivative_symbol(nu, ds):
    # (B_nu f)*(s) = (s - 2)(s - 1 - nu) f*(s - 2)
    s = 2.0 + max(nu - 1.0, 0.0) + ds
    assume(abs(s - 1 - nu) > 1e-6)
    assert mellin_symbol_DB(s, OperatorParams(1.0, nu)) == pytest.approx(
        (s - 2) * (s - 1 - nu), rel=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.05, 3.0), st.floats(0.0, 6.0), st.floats(0.01, 6.0))
def test_reciprocity(alpha, nu, ds):
    s = 2 * alpha + max(nu - 1.0, 0.0) + ds
    p = OperatorParams(alpha, nu)
    assert mellin_symbol_DB(s, p) * mellin_symbol_IB(s - 2 * alpha, p) == pytest.approx(
        1.0, rel=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.05, 3.0), st.floats(0.05, 3.0), st.floats(0.0, 6.0), st.floats(0.01, 6.0))
def test_index_law(alpha, beta, nu, ds):
    s = max(nu - 1.0, 0.0) + ds
    assert symbol_semigroup_check(s, alpha, beta, nu) == pytest.approx(1.0, rel=1e-12)


def test_symbol_domain_and_probe():
    p = OperatorParams(0.5, 0.5)
    with pytest.raises(DomainError):
        mellin_symbol_IB(-0.6, p)        # below nu - 1
    with pytest.raises(DomainError):
        mellin_symbol_IB(-0.25, p)       # in the strip but not probing
    assert math.isfinite(mellin_symbol_IB(-0.25, p, probe=True))
    with pytest.raises(DomainError):
        mellin_symbol_IB(0.0, p, probe=True)  # pole of Gamma(s/2)
    with pytest.raises(DomainError):
        mellin_symbol_DB(0.0, OperatorParams(1.0, 0.0))
    with pytest.raises(DomainError):
        mellin_symbol_DB(2.0, OperatorParams(1.0, 0.0))   # pole of Gamma(s/2 - alpha)
    with pytest.raises(DomainError):
        symbol_semigroup_check(1.0, 0.0, 1.0, 1.0)


def test_symbol_object():
    p = OperatorParams(0.75, 1.5)
    integral = MellinSymbol(p)
    assert integral.shift == 1.5 and integral.domain_constraint == 0.5
    assert integral(2.0) == mellin_symbol_IB(2.0, p)
    deriv = MellinSymbol(p, "derivative")
    assert deriv.shift == -1.5
    assert deriv(3.0) == mellin_symbol_DB(3.0, p)
    with pytest.raises(ValueError):
        MellinSymbol(p, "sideways")


# --- numeric transforms of IB f --------------------------------------------------


@pytest.mark.parametrize("alpha,nu,s", [(0.5, 2.0, 1.5), (1.25, 1.0, 0.8), (0.5, 0.0, 2.0)])
def test_mellin_sides(alpha, nu, s):
    lhs, rhs = mellin_sides(corpus.get("bump"), s, OperatorParams(alpha, nu))
    assert lhs == pytest.approx(rhs, rel=1e-8)


def test_mellin_sides_continued_strip():
    # nu < 1 admits nu - 1 < s < 0 through the split at x = 0
    p = OperatorParams(0.5, 0.5)
    lhs, rhs = mellin_sides(corpus.get("bump"), -0.25, p)
    assert lhs == pytest.approx(rhs, rel=1e-8)


def test_value_at_zero_and_excess():
    f = corpus.get("bump")
    p = OperatorParams(0.75, 0.3)
    num = IntegralMellin(f, p)
    c0 = num.value_at_zero()
    for x in (0.1, 0.4):
        direct = frac_bessel_integral(f, x, p)
        assert c0 + num.excess(x) == pytest.approx(direct, rel=1e-10)
    assert frac_bessel_integral(f, 1e-6, p) == pytest.approx(c0, rel=1e-4)


def test_integral_mellin_domain():
    num = IntegralMellin(corpus.get("bump"), OperatorParams(0.5, 2.0))
    with pytest.raises(DomainError):
        num(0.5)
    with pytest.raises(DomainError):
        IntegralMellin(corpus.get("gaussian"), OperatorParams(0.5, 2.0))


@pytest.mark.parametrize("nu", [0.0, 1.0, 2.5])
@pytest.mark.parametrize("s", [3.25, 5.0])
def test_derivative_sides(nu, s):
    lhs, rhs = derivative_sides(corpus.get("bump"), s, nu)
    assert lhs == pytest.approx(rhs, rel=1e-9)
