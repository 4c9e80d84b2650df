"""Quasiconformality checks for ``u = P_alpha[f]``.

The Beltrami coefficient ``mu = u_zbar / u_z`` and the dilatation
``K = (1 + |mu|) / (1 - |mu|)`` are estimated on a sampled disk grid, and the
length and Lipschitz bounds on ``|u_z|`` and ``|u_zbar|`` are checked against
that estimate. Only local non-degeneracy (``|u_z| > |u_zbar|``) is tested on
the grid; global injectivity of ``u`` is not verified.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace

import numpy as np

from .boundary import BoundaryFunction, curve_length, lipschitz_constant
from .core import as_alpha, extension_and_partials, kernel_mean
from .errors import DegeneracyError, DomainError, NotQuasiconformalError
from .quadrature import TWO_PI, QuadratureSpec, count_nodes, periodic_mean
from .records import VerificationRecord

__all__ = [
    "QC_RADII",
    "QcProfile",
    "beltrami",
    "circle_partial_integrals",
    "is_simple_curve",
    "qc_profile",
    "verify_thm19",
    "verify_thm110",
]

QC_RADII = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95)
QC_ANGLES = 512
# |u_z| at or below this is treated as a vanishing derivative
DEGENERACY_FLOOR = 1e-12
# relative tolerance of every qc inequality
QC_RTOL = 1e-6

INJECTIVITY_NOTE = "local non-degeneracy checked on grid; global injectivity not verified"


@dataclass(frozen=True)
class QcProfile:
    """Dilatation estimate ``K`` from the maximum of ``|mu|`` on a disk grid."""

    K: float
    mu_max: float
    grid: dict
    location: complex

    def __post_init__(self):
        if not 0.0 <= self.mu_max < 1.0:
            raise DomainError(f"mu_max must lie in [0, 1), got {self.mu_max!r}")


def _grid_points(radii, angles: int) -> np.ndarray:
    th = TWO_PI * np.arange(angles) / angles
    return (np.asarray(radii, dtype=float)[:, None] * np.exp(1j * th)[None, :]).ravel()


def beltrami(alpha, f: BoundaryFunction, z, quad: QuadratureSpec | None = None):
    """``mu(z) = u_zbar(z) / u_z(z)``; scalar input gives a Python complex."""
    _, parts = extension_and_partials(alpha, f, z, quad, full=True)
    uz = np.asarray(parts.u_z)
    bad = np.abs(uz) <= DEGENERACY_FLOOR
    if np.any(bad):
        where = np.asarray(z, dtype=complex).ravel()[np.argmax(bad.ravel())] if np.ndim(uz) else z
        raise DegeneracyError(f"u_z vanishes at z = {where!r}; the map is not locally injective there")
    mu = np.asarray(parts.u_zbar) / uz
    return complex(mu) if np.ndim(mu) == 0 else mu


def qc_profile(
    alpha,
    f: BoundaryFunction,
    quad: QuadratureSpec | None = None,
    radii=QC_RADII,
    angles: int = QC_ANGLES,
) -> QcProfile:
    """Estimate ``K`` on ``radii x angles``; fails if ``|mu| >= 1`` anywhere."""
    zs = _grid_points(radii, angles)
    _, parts = extension_and_partials(alpha, f, zs, quad, full=True)
    uz, uzb = np.abs(parts.u_z), np.abs(parts.u_zbar)
    with np.errstate(divide="ignore", invalid="ignore"):
        mu = np.where(uz > DEGENERACY_FLOOR, uzb / uz, math.inf)
    j = int(np.argmax(mu))
    grid = {"radii": tuple(float(r) for r in radii), "angles": int(angles)}
    if not mu[j] < 1.0:
        raise NotQuasiconformalError(
            f"|mu| = {float(mu[j])!r} >= 1 at z = {complex(zs[j])!r}",
            mu_max=float(mu[j]),
            location=complex(zs[j]),
        )
    m = float(mu[j])
    return QcProfile(K=(1.0 + m) / (1.0 - m), mu_max=m, grid=grid, location=complex(zs[j]))


def circle_partial_integrals(alpha, f: BoundaryFunction, r: float, quad: QuadratureSpec | None = None):
    """``(integral |u_z| |dz|, integral |u_zbar| |dz|)`` over the circle ``|z| = r``."""
    if not 0.0 < r < 1.0:
        raise DomainError(f"r must lie in (0, 1), got {r!r}")
    quad = quad or QuadratureSpec()
    # a vanishing |u_zbar| only carries roundoff; do not chase it
    quad = replace(quad, atol=max(quad.atol, DEGENERACY_FLOOR))

    def integrand(th):
        _, parts = extension_and_partials(alpha, f, r * np.exp(1j * th), quad, full=True)
        return np.stack([np.abs(parts.u_z), np.abs(parts.u_zbar)])

    value, _ = periodic_mean(integrand, quad.initial_nodes, quad)
    return TWO_PI * r * float(value[0]), TWO_PI * r * float(value[1])


def _segments_cross(p1, p2, q1, q2) -> np.ndarray:
    def orient(a, b, c):
        return np.sign(((b - a).conj() * (c - a)).imag)

    o1, o2 = orient(p1, p2, q1), orient(p1, p2, q2)
    o3, o4 = orient(q1, q2, p1), orient(q1, q2, p2)
    return (o1 * o2 <= 0) & (o3 * o4 <= 0)


def is_simple_curve(f: BoundaryFunction, vertices: int = 512) -> bool:
    """Whether the polygon through ``f`` at equally spaced angles is simple."""
    t = TWO_PI * np.arange(vertices) / vertices
    pts = np.asarray(f(t), dtype=complex)
    if np.any(np.abs(np.diff(np.append(pts, pts[0]))) == 0.0):
        return False
    a, b = pts, np.roll(pts, -1)
    i, j = np.triu_indices(vertices, k=2)
    # neighbouring edges share a vertex; the first and last edge too
    keep = ~((i == 0) & (j == vertices - 1))
    i, j = i[keep], j[keep]
    return not bool(np.any(_segments_cross(a[i], b[i], a[j], b[j])))


def _label(f: BoundaryFunction) -> str:
    return f.label or "unnamed"


def verify_thm19(
    alpha,
    f: BoundaryFunction,
    r_grid,
    quad: QuadratureSpec | None = None,
    profile: QcProfile | None = None,
) -> list[VerificationRecord]:
    """Circle-length bounds on ``|u_z|`` and ``|u_zbar|`` for each radius.

    Records per radius: ``1.9-a`` and ``1.9-b`` use the factor
    ``kernel_mean(alpha, r)``; ``1.21`` and ``1.22`` are the radius-free forms.
    """
    a = as_alpha(alpha)
    if not is_simple_curve(f):
        raise DomainError(f"boundary curve of {_label(f)!r} is not simple on the sample grid")
    profile = profile or qc_profile(a, f, quad)
    K = profile.K
    length = curve_length(f)
    notes = f"K={K!r}; |gamma|={length!r}; {INJECTIVITY_NOTE}"
    out = []
    for r in r_grid:
        r = float(r)
        start = time.perf_counter()
        with count_nodes() as used:
            int_dz, int_dzbar = circle_partial_integrals(a, f, r, quad)
        elapsed = time.perf_counter() - start
        km = kernel_mean(a, r)
        tol = QC_RTOL * max(1.0, length)
        rows = (
            ("1.9-a", int_dz, 0.5 * (K + 1.0) * km * length),
            ("1.9-b", int_dzbar, 0.5 * (K - 1.0) * km * length),
            ("1.21", int_dz, 0.5 * (K + 1.0) * length),
            ("1.22", int_dzbar, 0.5 * (K - 1.0) * length),
        )
        for name, lhs, rhs in rows:
            out.append(
                VerificationRecord(
                    theorem=name,
                    alpha=a.alpha,
                    p=None,
                    r=r,
                    boundary=_label(f),
                    lhs=lhs,
                    rhs=rhs,
                    tol=tol,
                    nodes=used[0],
                    elapsed=elapsed,
                    notes=notes,
                )
            )
    return out


def verify_thm110(
    alpha,
    f: BoundaryFunction,
    disk_grid=None,
    quad: QuadratureSpec | None = None,
    L: float | None = None,
    profile: QcProfile | None = None,
) -> list[VerificationRecord]:
    """Lipschitz bounds on ``|z u_z|`` and ``|zbar u_zbar|`` over a disk grid.

    ``disk_grid`` is ``(radii, angles)`` (default: the qc grid). Returns the
    two supremum records ``1.24`` and ``1.25`` followed by one ``1.10-chain``
    record per radius for ``|z u_z - zbar u_zbar| <= L kernel_mean(alpha, r)``.
    """
    a = as_alpha(alpha)
    radii, angles = disk_grid or (QC_RADII, QC_ANGLES)
    radii = tuple(float(r) for r in radii)
    if L is None:
        L = lipschitz_constant(f)
    start = time.perf_counter()
    zs = _grid_points(radii, angles)
    with count_nodes() as used:
        _, parts = extension_and_partials(a, f, zs, quad, full=True)
    elapsed = time.perf_counter() - start
    uz, uzb = np.asarray(parts.u_z), np.asarray(parts.u_zbar)
    if np.max(np.abs(uz)) <= DEGENERACY_FLOOR and np.max(np.abs(uzb)) <= DEGENERACY_FLOOR:
        # constant data: every partial vanishes and any K works
        K, kind = 1.0, "partials vanish on grid"
    else:
        profile = profile or qc_profile(a, f, quad, radii, angles)
        K, kind = profile.K, f"mu_max={profile.mu_max!r}"
    notes = f"K={K!r}; L={L!r}; {kind}; {INJECTIVITY_NOTE}"
    tol = QC_RTOL * max(1.0, L)
    a_dz = np.abs(zs * uz)
    a_dzb = np.abs(np.conj(zs) * uzb)
    out = []
    for name, vals, rhs in (
        ("1.24", a_dz, 0.5 * (K + 1.0) * L),
        ("1.25", a_dzb, 0.5 * (K - 1.0) * L),
    ):
        j = int(np.argmax(vals))
        out.append(
            VerificationRecord(
                theorem=name,
                alpha=a.alpha,
                p=None,
                r=float(abs(zs[j])),
                boundary=_label(f),
                lhs=float(vals[j]),
                rhs=rhs,
                tol=tol,
                nodes=used[0],
                elapsed=elapsed,
                notes=notes,
            )
        )
    chain = np.abs(zs * uz - np.conj(zs) * uzb).reshape(len(radii), angles)
    for k, r in enumerate(radii):
        out.append(
            VerificationRecord(
                theorem="1.10-chain",
                alpha=a.alpha,
                p=None,
                r=r,
                boundary=_label(f),
                lhs=float(np.max(chain[k])),
                rhs=L * kernel_mean(a, r),
                tol=tol,
                nodes=used[0],
                elapsed=elapsed,
                notes=notes,
            )
        )
    return out
