import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from fracbessel.errors import DomainError
from fracbessel.specfun import (GammaRatio, gamma_ratio_eval, gamma_signed, hyp2f1,
                                hyp2f1_excess, hyp2f1_nonpos, legendre_p, legendre_p_xm1,
                                ln_gamma_signed, rgamma)

finite = dict(allow_nan=False, allow_infinity=False)


def mp_hyp2f1(a, b, c, z, omz=None):
    with mp.workdps(150):
        zz = mp.mpf(z) if omz is None else 1 - mp.mpf(omz)
        return float(mp.hyp2f1(a, b, c, zz))


# --- gamma -------------------------------------------------------------------


@pytest.mark.parametrize("x", [0.5, 1.0, 2.5, 10.0, 171.5, -0.5, -1.5, -2.25, -7.3, 1e-8, -1e-8])
def test_gamma_signed_matches_mpmath(x):
    assert gamma_signed(x) == pytest.approx(float(mp.gamma(x)), rel=1e-13)


@pytest.mark.parametrize("x", [0.0, -1.0, -2.0, -30.0])
def test_gamma_poles_rejected(x):
    with pytest.raises(DomainError):
        ln_gamma_signed(x)


def test_gamma_sign_alternates_between_poles():
    signs = [ln_gamma_signed(-k - 0.5)[1] for k in range(6)]
    assert signs == [-1, 1, -1, 1, -1, 1]


@given(st.floats(-5, 5, **finite))
def test_reflection_identity(x):
    assume(abs(x - round(x)) > 1e-6)
    val = gamma_signed(x) * gamma_signed(1 - x) * float(mp.sinpi(x)) / math.pi
    assert val == pytest.approx(1.0, rel=1e-12)


@given(st.floats(-4.9, 4.9, **finite))
def test_duplication_identity(z):
    assume(abs(2 * z - round(2 * z)) > 1e-6)
    rhs = 2 ** (2 * z - 1) / math.sqrt(math.pi) * gamma_signed(z) * gamma_signed(z + 0.5)
    assert gamma_signed(2 * z) == pytest.approx(rhs, rel=1e-12)


def test_gamma_ratio_bracket():
    r = GammaRatio([1.0, 1.5], [1.5, 2.0])
    assert gamma_ratio_eval(r) == pytest.approx(1.0, rel=1e-15)
    assert GammaRatio([-0.5], [0.5]).value() == pytest.approx(-2.0, rel=1e-15)
    assert GammaRatio([0.5], []).log_abs() == (pytest.approx(0.5 * math.log(math.pi)), 1)


def test_gamma_ratio_huge_arguments_stay_finite():
    # each gamma overflows a double; the ratio does not
    r = GammaRatio([200.5], [200.0])
    assert r.value() == pytest.approx(float(mp.gamma(200.5) / mp.gamma(200)), rel=1e-12)


def test_gamma_ratio_rejects_pole():
    with pytest.raises(DomainError):
        GammaRatio([-2.0], [1.0])


def test_rgamma_zero_at_poles():
    assert rgamma(-3.0) == 0.0
    assert rgamma(4.0) == pytest.approx(1 / 6)


# --- 2F1 ---------------------------------------------------------------------


@pytest.mark.parametrize("a,b,c,z,expected", [
    (1, 1, 2, 0.5, 2 * math.log(2)),          # -log(1-z)/z
    (0.5, 1, 1.5, 0.25, math.atanh(0.5) / 0.5),
    (-2, 3, 1.5, 0.7, 1 - 2 * 3 / 1.5 * 0.7 + 3 * 4 / (1.5 * 2.5) * 0.49),
    (1, 1, 1, 0.75, 4.0),                     # 1/(1-z)
])
def test_hyp2f1_closed_forms(a, b, c, z, expected):
    assert hyp2f1(a, b, c, z) == pytest.approx(expected, rel=1e-14)


def test_hyp2f1_log_example():
    assert hyp2f1(1, 1, 2, 0.5) == pytest.approx(2 * math.log(2), rel=1e-15)


def test_hyp2f1_zero_parameter_is_one():
    assert hyp2f1(0.0, 2.5, 3.0, 0.9) == 1.0
    assert hyp2f1(1.5, 0.0, 3.0, 0.9) == 1.0


@settings(max_examples=60, deadline=None)
@given(st.floats(-3, 3, **finite), st.floats(0.1, 3, **finite), st.floats(0.1, 3, **finite),
       st.floats(0.35, 0.65, **finite))
def test_series_and_euler_paths_agree(a, b, dc, z):
    c = b + dc
    s = hyp2f1(a, b, c, z, method="series")
    e = hyp2f1(a, b, c, z, method="euler")
    assert e == pytest.approx(s, rel=1e-10, abs=1e-300)


@pytest.mark.parametrize("omz", [1e-2, 1e-5, 1e-10, 1e-30, 1e-100])
@pytest.mark.parametrize("a,b,c", [(0.7, 0.35, 0.7), (2.1, 1.3, 2.6), (0.2, 0.45, 0.9),
                                   (1.85, 1.5, 3.0)])
def test_hyp2f1_near_one_against_mpmath(a, b, c, omz):
    got = hyp2f1(a, b, c, 1 - omz, omz=omz)
    assert got == pytest.approx(mp_hyp2f1(a, b, c, None, omz=omz), rel=1e-12)


def test_hyp2f1_vectorised():
    z = np.linspace(0, 0.95, 9)
    vec = hyp2f1(0.3, 0.8, 1.9, z)
    assert vec.shape == z.shape
    for zi, vi in zip(z, vec):
        assert vi == pytest.approx(hyp2f1(0.3, 0.8, 1.9, float(zi)), rel=1e-13)


def test_hyp2f1_domain():
    with pytest.raises(DomainError):
        hyp2f1(1, 1, 2, 1.0)
    with pytest.raises(DomainError):
        hyp2f1(1, 1, -0.5, 0.2)
    with pytest.raises(DomainError):
        hyp2f1(1, 1, 2, -0.1)


@pytest.mark.parametrize("z", [-0.1, -1.0, -7.5, -1e3])
@pytest.mark.parametrize("a,b,c", [(1.5, 0.5, 2.0), (-0.75, 2.0, 0.5), (2.0, -3.0, 1.25)])
def test_hyp2f1_nonpositive_argument(a, b, c, z):
    assert hyp2f1_nonpos(a, b, c, z) == pytest.approx(mp_hyp2f1(a, b, c, z), rel=1e-12)


@pytest.mark.parametrize("w", [1e-30, 1e-8, 0.01, 0.25])
def test_hyp2f1_excess(w):
    with mp.workdps(60):
        ref = float(mp.hyp2f1(0.4, 1.2, 0.8, w) - 1)
    assert hyp2f1_excess(0.4, 1.2, 0.8, w) == pytest.approx(ref, rel=1e-13)


# --- Legendre ----------------------------------------------------------------


@pytest.mark.parametrize("mu,lam,x", [(0.0, 2.0, 1.5), (-0.5, -0.25, 2.0), (0.3, 1.7, 1.01),
                                      (-1.75, 0.5, 30.0), (0.25, -1.0, 3.0)])
def test_legendre_against_mpmath(mu, lam, x):
    with mp.workdps(40):
        ref = float(mp.legenp(lam, mu, x, type=3))
    assert legendre_p(mu, lam, x) == pytest.approx(ref, rel=1e-12)


def test_legendre_polynomial_case():
    # P_2(x) = (3x^2 - 1)/2
    assert legendre_p(0.0, 2.0, 1.5) == pytest.approx((3 * 2.25 - 1) / 2, rel=1e-14)


@settings(max_examples=50)
@given(st.floats(-2.4, 0.9, **finite), st.floats(-3, 3, **finite), st.floats(1.0, 20, **finite))
def test_legendre_degree_symmetry(mu, lam, x):
    assume(abs((1 - mu) - round(1 - mu)) > 1e-6 or 1 - mu > 0)
    assume(x > 1.0)
    a = legendre_p(mu, lam, x)
    b = legendre_p(mu, -lam - 1, x)
    assert a == pytest.approx(b, rel=1e-10, abs=1e-300)


def test_legendre_small_offset_form():
    xm1 = 1e-12
    with mp.workdps(40):
        ref = float(mp.legenp(0.3, -0.5, 1 + mp.mpf(xm1), type=3))
    assert legendre_p_xm1(-0.5, 0.3, xm1) == pytest.approx(ref, rel=1e-12)


def test_legendre_domain():
    with pytest.raises(DomainError):
        legendre_p(0.0, 1.0, 0.5)
    with pytest.raises(DomainError):
        legendre_p(2.0, 1.0, 1.5)   # Gamma(1 - mu) pole
    with pytest.raises(DomainError):
        legendre_p(0.5, 1.0, 1.0)
