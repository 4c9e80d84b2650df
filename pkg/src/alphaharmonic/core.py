"""The alpha-harmonic kernel, the Poisson-type extension and its first partials.

For ``z = r e^{i theta}`` the extension is

    u(z) = (1/2pi) * integral K_alpha(z e^{-it}) f(e^{it}) dt,
    K_alpha(w) = c_alpha (1 - |w|^2)^(alpha+1) / |1 - w|^(alpha+2).

All integrals are taken in the centred angle ``v = t - theta`` so that the
kernel peak of width ``~ 1 - r`` sits at ``v = 0``. Boundary data with jumps
is integrated panel by panel; the extremal families are integrated in their
native Moebius variable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .boundary import BoundaryFunction
from .errors import DomainError, QuadratureError
from .quadrature import (
    TWO_PI,
    QuadratureSpec,
    circle_mean,
    count_nodes,
    panel_nodes,
    periodic_mean,
    tally_nodes,
)
from .specfun import gamma, hyp2f1, log_gamma

__all__ = [
    "AlphaParam",
    "DiskPoint",
    "Partials",
    "QuadratureSpec",
    "extension_and_partials",
    "kernel",
    "kernel_mean",
    "partials",
    "poisson_extend",
    "t_alpha_residual",
]

# points integrated together on the smooth (shared-node) path
_CHUNK = 64


def c_alpha_of(alpha: float) -> float:
    """c_alpha = Gamma(alpha/2 + 1)^2 / Gamma(1 + alpha)."""
    if 1.0 + alpha < 170.0:
        return gamma(0.5 * alpha + 1.0) ** 2 / gamma(1.0 + alpha)
    return math.exp(2.0 * log_gamma(0.5 * alpha + 1.0) - log_gamma(1.0 + alpha))


@dataclass(frozen=True)
class AlphaParam:
    """The parameter alpha > -1 together with its normalising constant."""

    alpha: float
    c_alpha: float = field(init=False)

    def __post_init__(self):
        a = float(self.alpha)
        if not a > -1.0 or not math.isfinite(a):
            raise DomainError(f"alpha must be a finite number > -1, got {self.alpha!r}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "c_alpha", c_alpha_of(a))


def as_alpha(alpha) -> AlphaParam:
    return alpha if isinstance(alpha, AlphaParam) else AlphaParam(float(alpha))


@dataclass(frozen=True)
class DiskPoint:
    """Polar point ``r e^{i theta}`` of the open unit disk, theta reduced to [0, 2pi)."""

    r: float
    theta: float = 0.0

    def __post_init__(self):
        r = float(self.r)
        if not 0.0 <= r < 1.0:
            raise DomainError(f"r must lie in [0, 1), got {self.r!r}")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "theta", float(np.mod(self.theta, TWO_PI)))

    @property
    def z(self) -> complex:
        return self.r * complex(math.cos(self.theta), math.sin(self.theta))

    @classmethod
    def from_complex(cls, z: complex) -> "DiskPoint":
        z = complex(z)
        return cls(abs(z), math.atan2(z.imag, z.real))


class Partials(NamedTuple):
    """First-order partials of u: polar ``u_r, u_theta`` and Wirtinger ``u_z, u_zbar``."""

    u_r: complex
    u_theta: complex
    u_z: complex
    u_zbar: complex


def _polar(z):
    """Radii, angles, output shape and scalar flag for the accepted point forms."""
    if isinstance(z, DiskPoint):
        return np.array([z.r]), np.array([z.theta]), (), True
    if isinstance(z, (list, tuple)) and z and isinstance(z[0], DiskPoint):
        return (
            np.array([p.r for p in z]),
            np.array([p.theta for p in z]),
            (len(z),),
            False,
        )
    arr = np.asarray(z, dtype=complex)
    r = np.abs(arr).ravel()
    if np.any(r >= 1.0):
        raise DomainError("points must satisfy |z| < 1")
    theta = np.mod(np.angle(arr).ravel(), TWO_PI)
    return r, theta, arr.shape, arr.ndim == 0


def kernel(alpha, z):
    """K_alpha(z) = c_alpha (1 - |z|^2)^(alpha+1) / |1 - z|^(alpha+2) for |z| < 1."""
    a = as_alpha(alpha)
    w = np.asarray(z.z if isinstance(z, DiskPoint) else z, dtype=complex)
    r = np.abs(w)
    if np.any(r >= 1.0):
        raise DomainError("kernel needs |z| < 1")
    # |1 - z|^2 = (1 - r)^2 + 4 r sin^2(phi / 2), free of cancellation near z = 1
    phi = np.angle(w)
    d = (1.0 - r) ** 2 + 4.0 * r * np.sin(0.5 * phi) ** 2
    out = a.c_alpha * (1.0 - r * r) ** (a.alpha + 1.0) * d ** (-(a.alpha + 2.0) / 2.0)
    return float(out) if out.ndim == 0 else out


def kernel_mean(alpha, r: float) -> float:
    """(1/2pi) * integral of K_alpha(r e^{-it}) dt = c_alpha F(-alpha/2, -alpha/2; 1; r^2)."""
    a = as_alpha(alpha)
    if not 0.0 <= r < 1.0:
        raise DomainError(f"r must lie in [0, 1), got {r!r}")
    h = -0.5 * a.alpha
    return a.c_alpha * hyp2f1(h, h, 1.0, r * r)


def _kernel_stack(a: AlphaParam, r, v, full: bool):
    """Kernel factors as functions of the centred angle ``v = t - theta``.

    Rows: K, dK/dr, dK/dtheta, and the Wirtinger factor ``k`` with
    ``u_z = e^{-i theta} * mean(k f)`` and ``u_zbar = e^{i theta} * mean(conj(k) f)``.
    """
    al, c = a.alpha, a.c_alpha
    s2 = np.sin(0.5 * v) ** 2
    d = (1.0 - r) ** 2 + 4.0 * r * s2
    w = (1.0 - r) * (1.0 + r)
    k0 = c * w ** (al + 1.0) * d ** (-(al + 2.0) / 2.0)
    if not full:
        return k0[None]
    common = c * w**al * d ** (-(al + 4.0) / 2.0)
    r_minus_cos = -(1.0 - r) + 2.0 * s2
    kr = -common * (2.0 * (al + 1.0) * r * d + (al + 2.0) * w * r_minus_cos)
    kt = (al + 2.0) * r * w * common * np.sin(v)
    # e^{-iv} - r with the real part formed without cancellation
    e_minus_r = ((1.0 - r) - 2.0 * s2) - 1j * np.sin(v)
    kz = common * (-(al + 1.0) * r * d + (1.0 + 0.5 * al) * w * e_minus_r)
    return np.stack([k0 + 0j, kr + 0j, kt + 0j, kz, np.conj(kz)])


def _finish(stack, theta, full: bool):
    if not full:
        return stack[0], None
    phase = np.exp(-1j * theta)
    return stack[0], Partials(stack[1], stack[2], phase * stack[3], np.conj(phase) * stack[4])


def _one_point(a: AlphaParam, f: BoundaryFunction, r: float, theta: float, quad, full: bool):
    """Integrate at a single point on the panel or native path."""
    if f.native is not None:
        nat = f.native
        m = nat.map
        s_star = float(m.inverse_offset(theta))
        rot = np.exp(1j * (m.theta - theta))

        def integrand(w):
            s = s_star + w
            e = np.exp(1j * s)
            v = np.angle(rot * (m.rho + e) / (1.0 + m.rho * e))
            return _kernel_stack(a, r, v, full) * (nat.values(s) * m.jacobian(s))

        breaks = [b - s_star for b in nat.s_breaks]
        value, _ = circle_mean(integrand, quad, breaks=breaks)
    else:

        def integrand(v):
            return _kernel_stack(a, r, v, full) * f(theta + v)

        breaks = [b - theta for b in f.breaks]
        value, _ = circle_mean(integrand, quad, breaks=breaks)
    return value


def _smooth_points(a: AlphaParam, f: BoundaryFunction, r, theta, quad, full: bool):
    """Shared-node trapezoid over a block of points (smooth boundary data)."""
    n0 = quad.nodes_for_radius(float(np.max(r)))
    rr = r[:, None]
    th = theta[:, None]

    def integrand(v):
        vals = f(th + v[None, :])
        return _kernel_stack(a, rr, v[None, :], full) * vals[None]

    value, _ = periodic_mean(integrand, n0, quad, offset=-math.pi)
    return value


def _mode_multipliers(a: AlphaParam, r: float, ks: tuple, quad: QuadratureSpec, full: bool) -> np.ndarray:
    """``mean(stack(v) e^{ikv})`` for each row of the kernel stack and each mode k."""
    value, used = _mode_multipliers_cached(a, r, ks, quad, full)
    # cache hits report the original node count so tallies stay reproducible
    tally_nodes(used)
    return value


@lru_cache(maxsize=4096)
def _mode_multipliers_cached(a, r, ks, quad, full):
    kk = np.array(ks, dtype=float)

    def integrand(v):
        stack = _kernel_stack(a, r, v, full)
        return stack[:, None, :] * np.exp(1j * kk[:, None] * v[None, :])[None]

    with count_nodes(propagate=False) as used:
        value, _ = periodic_mean(integrand, quad.nodes_for_radius(r), quad, offset=-math.pi)
    value.setflags(write=False)
    return value, used[0]


def _fourier_points(a: AlphaParam, coeffs: dict, r, theta, quad, full: bool):
    """Trigonometric-polynomial data: each mode is extended once per radius."""
    ks = tuple(sorted(coeffs))
    cs = np.array([coeffs[k] for k in ks], dtype=complex)
    kk = np.array(ks, dtype=float)
    out = np.empty((5 if full else 1, r.size), dtype=complex)
    for radius in np.unique(r):
        sel = r == radius
        mult = _mode_multipliers(a, float(radius), ks, quad, full)
        modes = cs[:, None] * np.exp(1j * kk[:, None] * theta[sel][None, :])
        out[:, sel] = mult @ modes
    return out


def extension_and_partials(alpha, f: BoundaryFunction, z, quad: QuadratureSpec | None = None, full: bool = True):
    """``u(z)`` and, if ``full``, the :class:`Partials` at the same points."""
    a = as_alpha(alpha)
    quad = quad or QuadratureSpec()
    r, theta, shape, scalar = _polar(z)
    rows = 5 if full else 1
    out = np.empty((rows, r.size), dtype=complex)
    if f.native is None and f.fourier is not None:
        out[:] = _fourier_points(a, f.fourier, r, theta, quad, full)
    elif f.native is None and f.is_smooth:
        for lo in range(0, r.size, _CHUNK):
            sl = slice(lo, lo + _CHUNK)
            out[:, sl] = _smooth_points(a, f, r[sl], theta[sl], quad, full)
    else:
        for j in range(r.size):
            out[:, j] = _one_point(a, f, float(r[j]), float(theta[j]), quad, full)
    u, parts = _finish(out, theta, full)
    if scalar:
        u = complex(u[0])
        if parts is not None:
            parts = Partials(*(complex(x[0]) for x in parts))
    else:
        u = u.reshape(shape)
        if parts is not None:
            parts = Partials(*(x.reshape(shape) for x in parts))
    return u, parts


def poisson_extend(alpha, f: BoundaryFunction, z, quad: QuadratureSpec | None = None):
    """P_alpha[f](z) = (1/2pi) * integral K_alpha(z e^{-it}) f(e^{it}) dt."""
    u, _ = extension_and_partials(alpha, f, z, quad, full=False)
    return u


def partials(alpha, f: BoundaryFunction, z, quad: QuadratureSpec | None = None) -> Partials:
    """``(u_r, u_theta, u_z, u_zbar)`` by quadrature of the differentiated kernels.

    At the origin ``u_theta`` is 0 and ``u_r`` is the derivative in the
    direction of the point's angle.
    """
    _, parts = extension_and_partials(alpha, f, z, quad, full=True)
    return parts


# --- finite-difference residual of the operator T_alpha ---------------------


def _fixed_rule(f: BoundaryFunction, level: int):
    """A fixed quadrature rule ``(t, weight * f(t))`` normalised to mean value.

    The same nodes serve every point of a stencil, so quadrature error varies
    smoothly with the point and cancels in the differences.
    """
    if f.native is not None:
        nat = f.native
        s, w = panel_nodes(sorted(set(nat.s_breaks) | {0.0, TWO_PI}), level)
        t = nat.map.theta + nat.map.offset(s)
        return t, w * nat.values(s) * nat.map.jacobian(s) / TWO_PI
    if f.is_smooth:
        n = 16 * 2**level
        t = TWO_PI * np.arange(n) / n
        return t, f(t) / n
    t, w = panel_nodes(sorted(set(f.breaks) | {0.0, TWO_PI}), level)
    return t, w * f(t) / TWO_PI


def _extend_fixed(a: AlphaParam, rule, zs: np.ndarray) -> np.ndarray:
    t, wf = rule
    r = np.abs(zs)[:, None]
    theta = np.angle(zs)[:, None]
    v = t[None, :] - theta
    k = _kernel_stack(a, r, v, False)[0]
    return k @ wf


def _t_alpha_value(a: AlphaParam, u: np.ndarray, z0: complex, h: float) -> complex:
    """T_alpha applied with second-order central differences to stencil values.

    ``u`` holds u at z0, z0 + h, z0 - h, z0 + ih, z0 - ih.
    """
    u0, ue, uw, un, us = u
    x, y = z0.real, z0.imag
    ux = (ue - uw) / (2.0 * h)
    uy = (un - us) / (2.0 * h)
    lap = (ue + uw + un + us - 4.0 * u0) / (h * h)
    big_r = 1.0 - abs(z0) ** 2
    al = a.alpha
    return (
        -0.25 * al * al * big_r ** (-al - 1.0) * u0
        + 0.5 * al * big_r ** (-al - 1.0) * (x * ux + y * uy)
        + 0.25 * big_r ** (-al) * lap
    )


def t_alpha_residual(alpha, f: BoundaryFunction, z, h: float = 1e-3, quad: QuadratureSpec | None = None) -> float:
    """``|T_alpha u(z)|`` for ``u = P_alpha[f]`` from a 5-point stencil of width ``h``.

    The stencil values share one quadrature rule; the rule is refined until
    the stencil values agree to near machine precision.
    """
    a = as_alpha(alpha)
    quad = quad or QuadratureSpec()
    z0 = DiskPoint.from_complex(z.z if isinstance(z, DiskPoint) else z).z
    if not h > 0:
        raise DomainError("h must be positive")
    if abs(z0) + h > 1.0 - h:
        raise DomainError(f"stencil of width {h:g} around |z| = {abs(z0):g} leaves the disk |z| <= 1 - h")
    zs = z0 + np.array([0.0, h, -h, 1j * h, -1j * h])
    n0 = quad.nodes_for_radius(abs(z0) + h)
    level = int(round(math.log2(n0 / 16)))
    if not f.is_smooth or f.native is not None:
        level = 4
    prev = _extend_fixed(a, _fixed_rule(f, level), zs)
    for _ in range(quad.max_doublings + 4):
        level += 1
        cur = _extend_fixed(a, _fixed_rule(f, level), zs)
        if np.all(np.abs(cur - prev) <= 1e-14 * np.maximum(1.0, np.abs(cur))):
            return float(abs(_t_alpha_value(a, cur, z0, h)))
        prev = cur
    raise QuadratureError(
        "stencil values did not settle under rule refinement", previous=None, last=prev, count=level
    )
