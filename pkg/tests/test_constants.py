import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alphaharmonic.constants import (
    R_GRID,
    constant,
    constant_A,
    constant_B,
    constant_C,
    constant_D,
    constant_E,
    constant_F,
    g_lemma,
    g_lemma_bound,
    g_lemma_closed_half_pi,
    lemma24_check,
    sharp_A0,
)
from alphaharmonic.core import AlphaParam
from alphaharmonic.errors import ConditionError, DomainError, UnsupportedError
from alphaharmonic.specfun import beta, gamma

FOUR_OVER_PI = 4 / math.pi


def test_g_lemma_examples():
    assert g_lemma(0.3, 1.0, 0.0, 0.0) == pytest.approx(2 * math.pi, rel=1e-12)
    assert g_lemma(0.7, 0.0, 1.0, 0.0) == pytest.approx(4.0, rel=1e-12)
    assert g_lemma(0.5, 0.3, 2.0, 1.5) <= g_lemma(1.0, 0.0, 2.0, 1.5) + 1e-9


def test_g_lemma_domain():
    with pytest.raises(DomainError):
        g_lemma(0.5, 0.0, -1.0, 0.0)
    with pytest.raises(DomainError):
        g_lemma(0.5, 0.0, 1.0, -1.0)
    with pytest.raises(DomainError):
        g_lemma(1.0, 0.0, 1.0, -0.6)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.0, 1.0), st.floats(-math.pi, math.pi), st.floats(0.0, 4.0), st.floats(0.0, 3.0))
def test_g_lemma_bound_for_nonnegative_m(r, theta, k, m):
    bound, _ = g_lemma_bound(k, m)
    assert g_lemma(r, theta, k, m) <= bound + 1e-9 * (1 + bound)


def test_g_lemma_bound_fails_for_negative_m():
    # the stated bound needs m >= 0; a frozen counterexample
    bound, branch = g_lemma_bound(2.358, -0.366)
    assert branch == "G(1,pi/2)"
    assert g_lemma(0.895, -0.486, 2.358, -0.366) > bound + 1.0


@pytest.mark.parametrize("k, m", [(1.0, 0.0), (2.0, 0.5), (0.5, 1.0), (3.0, -0.25)])
def test_g_half_pi_closed_form(k, m):
    assert g_lemma(1.0, 0.5 * math.pi, k, m) == pytest.approx(g_lemma_closed_half_pi(k, m), rel=1e-9)


def test_lemma24_examples():
    lhs, rhs = lemma24_check(1.0, 1.0, 0.0)
    assert lhs == pytest.approx(math.pi) and rhs == pytest.approx(math.pi)
    lhs, rhs = lemma24_check(2.0, 0.0, 0.6)
    assert lhs == pytest.approx(2.0) and rhs == pytest.approx(2.0)
    lhs, rhs = lemma24_check(2.0, -0.5, 1.0)
    assert lhs == pytest.approx(rhs, rel=1e-7)
    lhs, rhs = lemma24_check(0.3, 0.1, 1.0)
    assert lhs == pytest.approx(rhs, rel=1e-7)


@settings(max_examples=20, deadline=None)
@given(st.floats(0.05, 5.0), st.floats(-2.0, 2.0), st.floats(0.0, 0.95))
def test_lemma24_identity(mu, nu, r):
    lhs, rhs = lemma24_check(mu, nu, r)
    assert abs(lhs - rhs) <= 1e-7 * (1 + abs(rhs))


def test_lemma24_against_mpmath():
    mu, nu, r = 2.5, 0.75, 0.4
    exact = mpmath.quad(lambda t: mpmath.sin(t) ** (mu - 1) / (1 + r * r - 2 * r * mpmath.cos(t)) ** nu, [0, mpmath.pi])
    assert lemma24_check(mu, nu, r)[0] == pytest.approx(float(exact), rel=1e-10)


def test_lemma24_domain():
    with pytest.raises(DomainError):
        lemma24_check(0.0, 1.0, 0.5)
    with pytest.raises(DomainError):
        lemma24_check(1.0, 1.0, 1.0)


def test_A_examples():
    assert constant_A(0.0, 2.0).value == pytest.approx(2.0, rel=1e-12)
    assert constant_A(0.0, 2.0, 0.5).value == pytest.approx(2 * math.sqrt(1.25 / 2), rel=1e-10)
    assert constant_A(0.0, 2.0, 0.5).value == pytest.approx(1.5811388300841895, rel=1e-10)


def test_A_zero_sharp_value():
    assert sharp_A0(2.0) == pytest.approx(2.0, rel=1e-12)
    q = 4 / 3
    integral = mpmath.quad(lambda s: abs(mpmath.cos(s)) ** q * (1 + mpmath.cos(s)) ** (q - 1), [0, mpmath.pi / 2, mpmath.pi, 3 * mpmath.pi / 2, 2 * mpmath.pi])
    expected = 4 ** 0.25 * math.pi ** (-1 / q) * float(integral) ** (1 / q)
    assert sharp_A0(4.0) == pytest.approx(expected, rel=1e-10)
    # for p > 2 the supremum constant is strictly larger than the sharp value
    assert constant_A(0.0, 4.0).value > sharp_A0(4.0) + 0.1


def test_A_rejects_p_one():
    with pytest.raises(UnsupportedError):
        constant_A(0.0, 1.0)
    with pytest.raises(UnsupportedError):
        constant_C(0.0, math.inf, 0.5)


@pytest.mark.parametrize("alpha", [0.0, 1.0, 2.0, 5.0])
@pytest.mark.parametrize("p", [1.5, 2.0, 4.0])
def test_A_dominates_and_tilde(alpha, p):
    sup = constant_A(alpha, p)
    assert sup.diagnostics["dominates"]
    for r in (0.0, 0.25, 0.5, 0.75, 0.95):
        cv = constant_A(alpha, p, r)
        assert sup.value >= cv.value
        assert cv.diagnostics["tilde"] <= cv.value * (1 + 1e-12)
        assert cv.diagnostics["gap"] <= 1e-9 * cv.value


def test_B_examples():
    assert constant_B(1.0, 3.0, 0.0).value == 0.0
    series = sum(float(mpmath.rf(-2, n) * mpmath.rf(-1, n) / (mpmath.rf(2, n) * math.factorial(n))) for n in range(3))
    expected = 2 / math.sqrt(math.pi) * math.sqrt(beta(1.5, 0.5) * series)
    assert constant_B(0.0, 2.0).value == pytest.approx(expected, rel=1e-12)
    assert constant_B(0.0, 2.0).value == pytest.approx(2.0, rel=1e-12)


@pytest.mark.parametrize("alpha, p", [(0.0, 2.0), (-0.5, 3.0), (1.0, 1.5), (2.0, 4.0)])
def test_B_dominates(alpha, p):
    sup = constant_B(alpha, p).value
    for r in np.arange(1, 10) / 10:
        cv = constant_B(alpha, p, r)
        assert cv.value <= sup
        assert cv.diagnostics["gap"] <= 1e-9 * max(cv.value, 1e-300)


def test_B_condition():
    with pytest.raises(ConditionError):
        constant_B(-0.5, 5.0)
    assert constant_B(-0.5, 5.0, 0.5).value > 0


def test_C_examples():
    assert constant_C(0.0, 2.0).value == pytest.approx(math.sqrt(2), rel=1e-12)
    assert constant_C(0.0, 3.0, 0.0).value == pytest.approx(1.0, rel=1e-15)
    q = 1.5
    assert constant_C(0.0, 3.0).value == pytest.approx((gamma(2 * q - 1) / gamma(q) ** 2) ** (1 / q), rel=1e-12)


@pytest.mark.parametrize("alpha", [-0.5, 0.0, 1.0, 5.0])
@pytest.mark.parametrize("p", [1.5, 2.0, 4.0])
def test_C_dominates(alpha, p):
    cv = constant_C(alpha, p)
    assert cv.diagnostics["dominates"]
    assert cv.diagnostics["gap"] <= 1e-9 * cv.diagnostics["gamma_ratio"]


def test_D_examples():
    assert constant_D(0.0).value == pytest.approx(FOUR_OVER_PI, rel=1e-12)
    for r in (0.0, 0.4, 0.9):
        assert constant_D(0.0, r).value == pytest.approx(FOUR_OVER_PI, rel=1e-12)
    # r = 0: c_2 (4 / 2pi) * integral |cos s| ds = 0.5 * (2 / pi) * 4
    assert constant_D(2.0, 0.0).value == pytest.approx(0.5 * (2 / math.pi) * 4, rel=1e-12)


@pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0, 2.0, 3.0, 5.0])
def test_D_dominates_for_nonnegative_alpha(alpha):
    cv = constant_D(alpha)
    assert cv.diagnostics["dominates"]
    for r in R_GRID:
        assert constant_D(alpha, r).diagnostics["gap"] <= 1e-9 * cv.value


def test_D_supremum_below_grid_for_negative_alpha():
    cv = constant_D(-0.5)
    assert not cv.diagnostics["lemma_hypothesis_m_nonnegative"]
    assert not cv.diagnostics["dominates"]
    assert cv.diagnostics["grid_sup"] > cv.value


def test_E_examples():
    for r in (0.0, 0.3, 0.8):
        assert constant_E(0.0, r).value == pytest.approx(4 * r / math.pi, abs=1e-15)
    assert constant_E(0.0).value == pytest.approx(FOUR_OVER_PI)
    assert constant_E(3.0, 0.0).value == 0.0


@pytest.mark.parametrize("alpha", [-0.5, 0.0, 2.0])
def test_E_increasing_to_supremum(alpha):
    values = [constant_E(alpha, r).value for r in R_GRID]
    assert all(b > a for a, b in zip(values, values[1:]))
    assert constant_E(alpha, 0.999999).value == pytest.approx(constant_E(alpha).value, rel=1e-5)
    for r in (0.2, 0.7):
        assert constant_E(alpha, r).diagnostics["gap"] <= 1e-9


def test_F_examples():
    assert constant_F(0.0).value == pytest.approx(1.0)
    assert constant_F(0.0, 0.7).value == pytest.approx(1.0)


@pytest.mark.parametrize("alpha", [-0.5, 0.0, 1.0, 2.0, 5.0])
def test_F_dominates(alpha):
    cv = constant_F(alpha)
    assert cv.diagnostics["dominates"]
    assert cv.diagnostics["gamma_ratio"] == pytest.approx(1 / AlphaParam(alpha).c_alpha, rel=1e-12)


def test_dispatch():
    assert constant("E", 0.0, None, 0.5).value == constant_E(0.0, 0.5).value
    with pytest.raises(DomainError):
        constant("A", 0.0)
    with pytest.raises(DomainError):
        constant("G", 0.0, 2.0)
