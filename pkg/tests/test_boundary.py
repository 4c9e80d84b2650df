import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alphaharmonic.boundary import (
    SubstitutionMap,
    constant,
    curve_length,
    exp_mode,
    extremal_family,
    fourier_polynomial,
    inverse_substitute,
    lipschitz_constant,
    lp_norm,
    native_lp_norm,
    parse_boundary,
    substitute,
    trig_polynomial,
)
from alphaharmonic.errors import BoundarySpecError, DomainError
from alphaharmonic.quadrature import QuadratureSpec, circle_mean

QUAD = QuadratureSpec(tol=1e-12)


def test_substitute_identity_at_rho_zero():
    t, jac = substitute(SubstitutionMap(0.0, 0.4), 1.0)
    assert t == pytest.approx(1.4, abs=1e-15)
    assert jac == 1.0


@given(st.floats(0.0, 0.99), st.floats(-math.pi, math.pi), st.floats(0.0, 2 * math.pi))
def test_substitution_distance_identity(rho, theta, s):
    t, _ = substitute(SubstitutionMap(rho, theta), s)
    lhs = abs(1 - rho * np.exp(1j * (theta - t)))
    rhs = (1 - rho * rho) / abs(1 + rho * np.exp(-1j * s))
    assert lhs == pytest.approx(rhs, abs=1e-12)


def test_jacobian_integrates_to_two_pi():
    m = SubstitutionMap(0.7)
    value, _ = circle_mean(m.jacobian, QUAD)
    assert value == pytest.approx(1.0, abs=1e-10)


@given(st.floats(0.0, 0.999), st.floats(-3.0, 3.0), st.floats(0.0, 6.28))
def test_inverse_substitute_roundtrip(rho, theta, s):
    m = SubstitutionMap(rho, theta)
    t, _ = substitute(m, s)
    back = inverse_substitute(m, t)
    assert abs(np.exp(1j * back) - np.exp(1j * s)) < 1e-10


def test_substitution_rejects_rho_one():
    with pytest.raises(DomainError):
        SubstitutionMap(1.0)


@pytest.mark.parametrize("p", [1.0, 2.0, 3.5])
@pytest.mark.parametrize("rho", [0.3, 0.9])
def test_extremal_D_has_unit_norm(p, rho):
    f = extremal_family("D", 0.0, p, rho)
    assert f.known_lp_norm(p) == 1.0
    assert lp_norm(f, p, QUAD) == pytest.approx(1.0, abs=1e-9)


def test_extremal_F_is_unimodular():
    f = extremal_family("F", 1.0, 2.0, 0.95)
    t = np.linspace(0, 2 * np.pi, 1001)
    assert np.allclose(np.abs(f(t)), 1.0)


def test_extremal_A_norm_matches_s_integral():
    rho = 0.9
    f = extremal_family("A", 0.0, 2.0, rho)

    def integrand(s):
        return np.cos(s) ** 2 * (1 + np.cos(s)) ** 2 / np.abs(1 + rho * np.exp(1j * s)) ** 2

    expected, _ = circle_mean(integrand, QUAD, breaks=[0.0, math.pi])
    assert lp_norm(f, 2.0, QUAD) ** 2 == pytest.approx(expected, rel=1e-8)


@pytest.mark.parametrize("kind, alpha, p", [("A", 0.0, 2.0), ("B", 0.5, 3.0), ("C", 0.0, 1.5), ("Cbar", 1.0, 4.0), ("D", 2.0, 1.0), ("E", 0.0, 2.0), ("F", 0.0, 2.0), ("Fbar", 0.0, 2.0)])
def test_norm_change_of_variables(kind, alpha, p):
    f = extremal_family(kind, alpha, p, 0.8)
    assert lp_norm(f, p, QUAD) == pytest.approx(native_lp_norm(f, p, QUAD), rel=1e-8)


def test_extremal_discontinuities_are_images_of_jumps():
    rho = 0.6
    f = extremal_family("E", 0.0, 2.0, rho)
    m = SubstitutionMap(rho)
    expected = sorted(np.mod([substitute(m, 0.0)[0], substitute(m, math.pi)[0]], 2 * math.pi))
    assert np.allclose(f.discontinuities, expected)


def test_extremal_rejects_p_one_for_holder_families():
    with pytest.raises(DomainError):
        extremal_family("A", 0.0, 1.0, 0.5)
    with pytest.raises(DomainError):
        extremal_family("Z", 0.0, 2.0, 0.5)


@pytest.mark.parametrize("p", [1.0, 2.0, 7.0])
def test_lp_norm_examples(p):
    assert lp_norm(constant(3.0), p) == pytest.approx(3.0)
    assert lp_norm(exp_mode(4), p) == pytest.approx(1.0)


def test_lp_norm_of_trig_polynomial_is_parseval():
    f = trig_polynomial(3, 4)
    expected = math.sqrt(sum(abs(c) ** 2 for c in f.fourier.values()))
    assert lp_norm(f, 2.0) == pytest.approx(expected, rel=1e-12)


def test_curve_length_examples():
    assert curve_length(exp_mode(1)) == pytest.approx(2 * math.pi, rel=1e-9)
    assert curve_length(constant(2.5) * 0 + exp_mode(1).scaled(2.5)) == pytest.approx(5 * math.pi, rel=1e-9)


def test_curve_length_stable_between_doublings():
    f = parse_boundary("sum:exp:1+scale:0.1,exp:2")
    t = lambda n: 2 * np.pi * np.arange(n) / n
    lengths = [float(np.sum(np.abs(np.roll(f(t(n)), -1) - f(t(n))))) for n in (2**12, 2**13)]
    assert abs(lengths[1] - lengths[0]) < 1e-6
    assert curve_length(f) == pytest.approx(lengths[1], rel=1e-6)


def test_curve_length_rotation_and_shift_invariant():
    coeffs = {1: 1.0, -2: 0.3 + 0.1j}
    base = curve_length(fourier_polynomial(coeffs))
    rotated = fourier_polynomial(coeffs).scaled(np.exp(0.7j))
    # t -> t + c multiplies the k-th coefficient by e^{ikc}
    shifted = fourier_polynomial({k: c * np.exp(1j * k * 1.3) for k, c in coeffs.items()})
    assert curve_length(rotated) == pytest.approx(base, rel=1e-9)
    assert curve_length(shifted) == pytest.approx(base, rel=1e-9)


def test_curve_length_rejects_discontinuous():
    with pytest.raises(DomainError):
        curve_length(extremal_family("D", 0.0, 2.0, 0.5))


@pytest.mark.parametrize("spec, expected", [("const:4", 0.0), ("exp:1", 1.0), ("exp:2", 2.0)])
def test_lipschitz_examples(spec, expected):
    assert lipschitz_constant(parse_boundary(spec)) == pytest.approx(expected, rel=1e-4, abs=1e-12)


@settings(max_examples=10, deadline=None)
@given(st.complex_numbers(min_magnitude=0.1, max_magnitude=5))
def test_lipschitz_scales(a):
    f = trig_polynomial(5, 3)
    assert lipschitz_constant(f.scaled(a)) == pytest.approx(abs(a) * lipschitz_constant(f), rel=1e-6)


def test_lipschitz_rejects_small_grid():
    with pytest.raises(DomainError):
        lipschitz_constant(exp_mode(1), grid=64)


def test_parse_examples():
    t = np.linspace(0, 6, 7)
    assert np.allclose(parse_boundary("const:2")(t), 2)
    assert np.allclose(parse_boundary("exp:-3")(t), np.exp(-3j * t))
    f = parse_boundary("sum:exp:1+scale:0.25,exp:-1")
    assert np.allclose(f(t), np.exp(1j * t) + 0.25 * np.exp(-1j * t))
    assert f.label == "sum:exp:1+scale:0.25,exp:-1"
    assert f.fourier == {1: 1.0, -1: 0.25}
    g = parse_boundary("extremal:D,0,inf,0.9")
    assert g.known_lp_norm(3.0) == 1.0


def test_trigpoly_is_seeded():
    a, b = parse_boundary("trigpoly:11,5"), parse_boundary("trigpoly:11,5")
    assert a.fourier == b.fourier
    assert max(abs(k) for k in a.fourier) == 5
    assert all(abs(c.real) <= 1 and abs(c.imag) <= 1 for c in a.fourier.values())


@pytest.mark.parametrize(
    "text, token",
    [
        ("cosh:1", "cosh"),
        ("exp:1.5", "1.5"),
        ("const:", "<end>"),
        ("extremal:Q,0,2,0.5", "Q"),
        ("trigpoly:1", "<end>"),
        ("exp:1 junk", " junk"),
        ("sum:exp:1", "<end>"),
    ],
)
def test_parse_errors_name_token(text, token):
    with pytest.raises(BoundarySpecError) as info:
        parse_boundary(text)
    assert info.value.token == token


def test_parse_error_for_invalid_extremal_parameters():
    with pytest.raises(BoundarySpecError, match="p > 1"):
        parse_boundary("extremal:A,0,1,0.5")
