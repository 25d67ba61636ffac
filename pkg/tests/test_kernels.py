import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracbessel.errors import DomainError
from fracbessel.kernels import (NU_ONE_LIMIT, OperatorParams, kernel_alpha1, kernel_hyp,
                                kernel_hyp_dx, kernel_legendre, kernel_nu0)


def mp_kernel_exact(x, y, alpha, nu):
    x, y, alpha, nu = (mp.mpf(v) for v in (x, y, alpha, nu))
    pref = ((y * y - x * x) / (2 * y)) ** (2 * alpha - 1) / mp.gamma(2 * alpha)
    return pref * mp.hyp2f1(alpha + (nu - 1) / 2, alpha, 2 * alpha, 1 - x * x / (y * y))


def mp_kernel(x, y, alpha, nu):
    with mp.workdps(40):
        return float(mp_kernel_exact(x, y, alpha, nu))


def test_params_validation():
    with pytest.raises(DomainError):
        OperatorParams(0.0, 1.0)
    with pytest.raises(DomainError):
        OperatorParams(0.5, -0.1)
    p = OperatorParams(0.75, 2.0)
    assert (p.a, p.b, p.c) == (1.25, 0.75, 1.5)


@pytest.mark.parametrize("x,y,alpha,nu", [
    (1.0, 2.0, 0.3, 0.0), (0.5, 0.51, 1.7, 2.5), (2.0, 150.0, 0.15, 5.0),
    (1.0, 1.0 + 1e-9, 0.6, 1.0), (0.2, 3.0, 2.9, 0.4), (1.0, 1.5, 1.0, 3.0),
])
@pytest.mark.parametrize("kernel", [kernel_hyp, kernel_legendre])
def test_kernel_against_mpmath(kernel, x, y, alpha, nu):
    p = OperatorParams(alpha, nu)
    assert kernel(x, y, p) == pytest.approx(mp_kernel(x, y, alpha, nu), rel=1e-12)


def test_alpha1_nu3_example():
    p = OperatorParams(1.0, 3.0)
    for k in (kernel_hyp(1, 2, p), kernel_legendre(1, 2, p), kernel_alpha1(1, 2, 3.0)):
        assert k == pytest.approx(3.0, rel=1e-14)


def test_alpha1_log_branch():
    assert kernel_alpha1(1.0, 2.0, 1.0) == pytest.approx(2 * math.log(2), rel=1e-15)


@pytest.mark.parametrize("nu", [1.0 + 0.5 * NU_ONE_LIMIT, 1.0 + 1e-6, 1.0 - 1e-5, 0.999])
def test_alpha1_continuous_around_nu1(nu):
    assert kernel_alpha1(1.0, 2.0, nu) == pytest.approx(mp_kernel(1.0, 2.0, 1.0, nu), rel=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.1, 5.0), st.floats(1.01, 100.0), st.floats(0.1, 3.0), st.floats(0.0, 6.0))
def test_hyp_and_legendre_agree(x, ratio, alpha, nu):
    p = OperatorParams(alpha, nu)
    y = x * ratio
    assert kernel_legendre(x, y, p) == pytest.approx(kernel_hyp(x, y, p), rel=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.1, 5.0), st.floats(1.01, 50.0), st.floats(0.1, 3.0))
def test_nu0_specialisation(x, ratio, alpha):
    y = x * ratio
    assert kernel_nu0(x, y, alpha) == pytest.approx(kernel_hyp(x, y, OperatorParams(alpha, 0.0)),
                                                    rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.1, 5.0), st.floats(1.01, 50.0), st.floats(0.0, 6.0))
def test_alpha1_specialisation(x, ratio, nu):
    y = x * ratio
    assert kernel_alpha1(x, y, nu) == pytest.approx(kernel_hyp(x, y, OperatorParams(1.0, nu)),
                                                    rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.2, 3.0), st.floats(1.05, 20.0), st.floats(0.1, 3.0), st.floats(0.0, 6.0),
       st.floats(0.1, 10.0))
def test_homogeneity(x, ratio, alpha, nu, lam):
    # K(lam x, lam y) = lam^(2 alpha - 1) K(x, y)
    p = OperatorParams(alpha, nu)
    y = x * ratio
    assert kernel_hyp(lam * x, lam * y, p) == pytest.approx(
        lam ** (2 * alpha - 1) * kernel_hyp(x, y, p), rel=1e-11)


def test_vectorised_over_y():
    p = OperatorParams(0.8, 1.4)
    ys = np.linspace(1.1, 9.0, 7)
    vec = kernel_hyp(1.0, ys, p)
    assert vec.shape == ys.shape
    assert vec[3] == pytest.approx(kernel_hyp(1.0, float(ys[3]), p), rel=1e-14)


@pytest.mark.parametrize("alpha,nu", [(0.75, 0.0), (1.3, 2.2), (2.0, 4.5)])
def test_x_derivative(alpha, nu):
    p = OperatorParams(alpha, nu)
    with mp.workdps(30):
        ref = float(mp.diff(lambda t: mp_kernel_exact(t, 2.5, alpha, nu), mp.mpf("1.2")))
    assert kernel_hyp_dx(1.2, 2.5, p) == pytest.approx(ref, rel=1e-8)


def test_kernel_domain():
    p = OperatorParams(0.5, 1.0)
    with pytest.raises(DomainError):
        kernel_hyp(1.0, 1.0, p)
    with pytest.raises(DomainError):
        kernel_legendre(0.0, 1.0, p)
