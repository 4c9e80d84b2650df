import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alphaharmonic.boundary import constant, exp_mode, extremal_family, fourier_polynomial, parse_boundary, trig_polynomial
from alphaharmonic.core import (
    AlphaParam,
    DiskPoint,
    extension_and_partials,
    kernel,
    kernel_mean,
    partials,
    poisson_extend,
    t_alpha_residual,
)
from alphaharmonic.errors import DomainError
from alphaharmonic.quadrature import QuadratureSpec

QUAD = QuadratureSpec(tol=1e-12)
ALPHAS = [-0.5, 0.0, 1.0, 2.0, 5.0]


def test_alpha_param():
    assert AlphaParam(0.0).c_alpha == 1.0
    assert AlphaParam(2.0).c_alpha == pytest.approx(0.5, rel=1e-14)
    with pytest.raises(DomainError):
        AlphaParam(-1.0)


def test_disk_point():
    p = DiskPoint(0.5, -math.pi / 2)
    assert p.theta == pytest.approx(1.5 * math.pi)
    assert p.z == pytest.approx(-0.5j)
    with pytest.raises(DomainError):
        DiskPoint(1.0, 0.0)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_kernel_at_origin_is_c_alpha(alpha):
    assert kernel(alpha, 0.0) == pytest.approx(AlphaParam(alpha).c_alpha, rel=1e-14)


def test_kernel_examples():
    assert kernel(0.0, 0.5) == pytest.approx(3.0, rel=1e-14)
    assert kernel(2.0, 0.5) == pytest.approx(3.375, rel=1e-14)
    with pytest.raises(DomainError):
        kernel(0.0, 1.0)


@given(st.floats(-0.99, 8.0), st.floats(0.0, 0.999), st.floats(-math.pi, math.pi))
def test_kernel_positive(alpha, r, phi):
    assert kernel(alpha, r * np.exp(1j * phi)) > 0


def _kernel_quadrature(alpha, r, n):
    t = 2 * np.pi * np.arange(n) / n
    return float(np.mean(kernel(alpha, r * np.exp(-1j * t))))


@pytest.mark.parametrize("alpha", ALPHAS)
@pytest.mark.parametrize("r", [0.0, 0.3, 0.6, 0.9])
def test_kernel_mean_identity(alpha, r):
    assert abs(_kernel_quadrature(alpha, r, 4096) - kernel_mean(alpha, r)) <= 1e-8


def test_kernel_mean_examples():
    assert kernel_mean(0.0, 0.7) == 1.0
    assert kernel_mean(3.0, 0.0) == pytest.approx(AlphaParam(3.0).c_alpha)
    assert kernel_mean(2.0, 0.9) == pytest.approx(_kernel_quadrature(2.0, 0.9, 4096), abs=1e-8)


@pytest.mark.parametrize("alpha", [-0.5, 1.0, 3.0])
def test_kernel_mean_tends_to_one(alpha):
    assert kernel_mean(alpha, 0.999) <= 1.0
    assert abs(kernel_mean(alpha, 0.999) - 1.0) < 0.01


def test_extension_examples():
    assert poisson_extend(0.0, constant(1.0), 0.7j) == pytest.approx(1.0, abs=1e-12)
    assert poisson_extend(2.0, constant(1.0), DiskPoint(0.5, 1.0)) == pytest.approx(0.625, abs=1e-12)
    z = 0.3 - 0.6j
    assert poisson_extend(0.0, exp_mode(1), z) == pytest.approx(z, abs=1e-12)


def test_extension_accepts_arrays_and_point_lists():
    f = trig_polynomial(2, 3)
    zs = np.array([[0.1, 0.2j], [-0.5, 0.3 + 0.3j]])
    u = poisson_extend(1.0, f, zs)
    assert u.shape == (2, 2)
    assert u[1, 0] == pytest.approx(poisson_extend(1.0, f, -0.5), abs=1e-12)
    pts = [DiskPoint(0.2, 1.0), DiskPoint(0.4, 2.0)]
    assert poisson_extend(1.0, f, pts).shape == (2,)


def test_extension_rejects_boundary_points():
    with pytest.raises(DomainError):
        poisson_extend(0.0, exp_mode(1), 1.0)


def _generic(f):
    """The same data without its Fourier description, forcing direct quadrature."""
    return type(f)(evaluator=f.evaluator, label=f.label)


@pytest.mark.parametrize("alpha", [-0.5, 0.0, 1.5, 4.0])
@pytest.mark.parametrize("z", [0.0, 0.4 + 0.2j, -0.85j, 0.97])
def test_fourier_path_matches_direct_quadrature(alpha, z):
    f = trig_polynomial(8, 4)
    u1, p1 = extension_and_partials(alpha, f, z, QUAD)
    u2, p2 = extension_and_partials(alpha, _generic(f), z, QUAD)
    assert u1 == pytest.approx(u2, abs=1e-10)
    assert np.allclose(p1, p2, atol=1e-8)


def test_jump_data_panel_path_against_fine_trapezoid():
    f = parse_boundary("extremal:E,0,2,0")
    z = 0.5 * np.exp(0.3j)
    t = 2 * np.pi * (np.arange(2**18) + 0.5) / 2**18
    expected = np.mean(kernel(1.0, z * np.exp(-1j * t)) * f(t))
    assert poisson_extend(1.0, f, z, QUAD) == pytest.approx(expected, abs=1e-8)


def test_partials_of_constant_vanish_at_alpha_zero():
    p = partials(0.0, constant(1.0), 0.3 + 0.4j, QUAD)
    assert np.allclose(p, 0.0, atol=1e-12)


@pytest.mark.parametrize("theta", [0.0, 1.0, 4.0])
def test_partials_of_identity(theta):
    z = 0.6 * np.exp(1j * theta)
    p = partials(0.0, exp_mode(1), z, QUAD)
    assert p.u_z == pytest.approx(1.0, abs=1e-12)
    assert p.u_zbar == pytest.approx(0.0, abs=1e-12)
    assert p.u_theta == pytest.approx(1j * z, abs=1e-12)
    assert p.u_r == pytest.approx(np.exp(1j * theta), abs=1e-12)


def _finite_differences(alpha, f, z, h=1e-5):
    u = lambda w: poisson_extend(alpha, f, w, QUAD)
    ux = (u(z + h) - u(z - h)) / (2 * h)
    uy = (u(z + 1j * h) - u(z - 1j * h)) / (2 * h)
    r, th = abs(z), np.angle(z)
    e = np.exp(1j * th)
    ur = (u((r + h) * e) - u((r - h) * e)) / (2 * h)
    ut = (u(r * np.exp(1j * (th + h))) - u(r * np.exp(1j * (th - h)))) / (2 * h)
    return ur, ut, 0.5 * (ux - 1j * uy), 0.5 * (ux + 1j * uy)


@pytest.mark.parametrize(
    "alpha, spec, z",
    [
        (0.0, "trigpoly:1,3", 0.5 + 0.2j),
        (1.5, "trigpoly:2,4", -0.3 + 0.6j),
        (-0.5, "sum:exp:2+scale:0.5,exp:-1", 0.8j),
        (2.0, "extremal:E,2,2,0.5", 0.4 - 0.1j),
        (0.5, "extremal:C,0.5,3,0.6", -0.7),
    ],
)
def test_partials_match_finite_differences(alpha, spec, z):
    f = parse_boundary(spec)
    p = partials(alpha, f, z, QUAD)
    assert np.allclose(p, _finite_differences(alpha, f, z), atol=1e-5, rtol=0)


@settings(max_examples=25, deadline=None)
@given(
    st.sampled_from([-0.5, 0.0, 1.0, 2.5]),
    st.integers(0, 50),
    st.floats(0.0, 0.95),
    st.floats(0.0, 2 * math.pi),
)
def test_wirtinger_identities(alpha, seed, r, theta):
    f = trig_polynomial(seed, 3)
    z = r * np.exp(1j * theta)
    p = partials(alpha, f, DiskPoint(r, theta), QUAD)
    e = np.exp(1j * theta)
    if r > 0:
        assert abs(p.u_r - (e * p.u_z + p.u_zbar / e)) <= 1e-7
    assert abs(p.u_theta - 1j * (z * p.u_z - np.conj(z) * p.u_zbar)) <= 1e-7


def test_origin_conventions():
    f = trig_polynomial(4, 2)
    p = partials(1.0, f, DiskPoint(0.0, 0.7), QUAD)
    assert p.u_theta == 0
    assert p.u_r == pytest.approx(np.exp(0.7j) * p.u_z + np.exp(-0.7j) * p.u_zbar, abs=1e-12)


@settings(max_examples=20, deadline=None)
@given(
    st.complex_numbers(max_magnitude=3),
    st.complex_numbers(max_magnitude=3),
    st.floats(0.0, 0.9),
    st.floats(0.0, 6.28),
)
def test_linearity(a, b, r, theta):
    f, g = trig_polynomial(1, 3), extremal_family("D", 0.0, 2.0, 0.5)
    z = r * np.exp(1j * theta)
    combined = f.scaled(a) + g.scaled(b)
    lhs = poisson_extend(1.0, combined, z, QUAD)
    rhs = a * poisson_extend(1.0, f, z, QUAD) + b * poisson_extend(1.0, g, z, QUAD)
    assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(a) + abs(b))


def test_alpha_zero_matches_classical_poisson():
    rng = np.random.default_rng(123)
    t = 2 * np.pi * np.arange(4096) / 4096
    for i in range(50):
        f = trig_polynomial(1000 + i, int(rng.integers(1, 7)))
        z = rng.uniform(0, 0.9) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        poisson = (1 - abs(z) ** 2) / np.abs(np.exp(1j * t) - z) ** 2
        expected = np.mean(poisson * f(t))
        assert abs(poisson_extend(0.0, f, z, QUAD) - expected) <= 1e-9


def test_t_alpha_residual_examples():
    assert t_alpha_residual(0.0, constant(1.0), 0.3) <= 1e-8
    assert t_alpha_residual(0.0, exp_mode(1), 0.4 * np.exp(1j * math.pi / 3), h=1e-3) <= 1e-6


def test_t_alpha_residual_second_order():
    f = trig_polynomial(9, 4)
    ratio = t_alpha_residual(1.5, f, 0.5, h=0.02) / t_alpha_residual(1.5, f, 0.5, h=0.01)
    assert 3.5 <= ratio <= 4.5


def test_t_alpha_residual_rejects_stencil_outside():
    with pytest.raises(DomainError):
        t_alpha_residual(0.0, exp_mode(1), 0.9995, h=1e-3)
