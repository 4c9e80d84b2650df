"""Integral means ``M_p(r, g)`` over circles and Hardy-type suprema over radii."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DomainError
from .quadrature import TWO_PI, QuadratureSpec, panel_integral, periodic_mean

__all__ = ["LebesgueExponent", "disk_function", "hardy_norm", "integral_means"]

COMPONENTS = ("u", "u_r", "u_theta", "u_z", "u_zbar")
# doublings of the angular grid for p = inf before the max is accepted
_SUP_DOUBLINGS = 4
# samples whose imaginary parts are this small (relative) count as real
_REAL_RTOL = 1e-13
_TINY = 1e-300
_ZERO_XTOL = 1e-13
_ZERO_MERGE = 1e-9


@dataclass(frozen=True)
class LebesgueExponent:
    """Exponent p >= 1 with Hoelder conjugate q (q = inf at p = 1, q = 1 at p = inf)."""

    p: float
    q: float = field(init=False)

    def __post_init__(self):
        p = float(self.p)
        if not p >= 1.0:
            raise DomainError(f"p must be >= 1, got {self.p!r}")
        object.__setattr__(self, "p", p)
        if p == 1.0:
            q = math.inf
        elif math.isinf(p):
            q = 1.0
        else:
            q = p / (p - 1.0)
        object.__setattr__(self, "q", q)

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.p)


def as_exponent(p) -> LebesgueExponent:
    return p if isinstance(p, LebesgueExponent) else LebesgueExponent(float(p))


def disk_function(alpha, f, component: str = "u", quad: QuadratureSpec | None = None):
    """Handle ``z -> value`` for ``u = P_alpha[f]`` or one of its first partials."""
    from .core import extension_and_partials

    if component not in COMPONENTS:
        raise DomainError(f"component must be one of {COMPONENTS}, got {component!r}")
    full = component != "u"

    def g(z):
        u, parts = extension_and_partials(alpha, f, z, quad, full=full)
        return u if component == "u" else getattr(parts, component)

    return g


def integral_means(g, r: float, p, quad: QuadratureSpec | None = None, n0: int | None = None) -> float:
    """``M_p(r, g) = ((1/2pi) * integral |g(r e^{i theta})|^p d theta)^(1/p)``.

    ``g`` may return values with leading axes (several functions sampled at
    the same points); the means are then returned as an array.

    For ``p = inf`` the maximum over an angular grid is returned, doubling the
    grid (at most a few times) while the maximum still grows; it is a lower
    bound for the essential supremum.
    """
    quad = quad or QuadratureSpec()
    pe = as_exponent(p)
    if not 0.0 <= r < 1.0:
        raise DomainError(f"r must lie in [0, 1), got {r!r}")
    n = int(n0 or quad.initial_nodes)
    if not pe.is_finite:
        th = TWO_PI * np.arange(n) / n
        best = np.max(np.abs(g(r * np.exp(1j * th))), axis=-1)
        for _ in range(_SUP_DOUBLINGS):
            # only the new midpoints; stop once refining no longer raises the max
            th = TWO_PI * (np.arange(n) + 0.5) / n
            n *= 2
            new = np.maximum(best, np.max(np.abs(g(r * np.exp(1j * th))), axis=-1))
            done = np.all(new <= best * (1.0 + quad.tol))
            best = new
            if done:
                break
        return _as_result(best)
    # an absolute tolerance on M_p is atol^p on the integral of |g|^p
    quad = replace(quad, atol=quad.atol**pe.p)
    zeros = () if _even_integer(pe.p) else _real_zeros(g, r, n)
    if zeros:
        # |g|^p has kinks at the zeros of real-valued g; integrate between them
        breaks = np.concatenate([zeros, [zeros[0] + TWO_PI]])
        value, _ = panel_integral(lambda th: np.abs(g(r * np.exp(1j * th))) ** pe.p, breaks, quad)
        value = np.asarray(value) / TWO_PI
    else:
        value, _ = periodic_mean(lambda th: np.abs(g(r * np.exp(1j * th))) ** pe.p, n, quad)
    return _as_result(np.asarray(value) ** (1.0 / pe.p))


def _even_integer(p: float) -> bool:
    return p == int(p) and int(p) % 2 == 0


def _real_zeros(g, r: float, n: int) -> tuple:
    """Sign changes on the circle of those components of ``g`` that are real there.

    Each bracketing pair of samples is refined to a zero, and samples that are
    negligible against the component's scale count as zeros themselves; the
    zeros of all real components (leading axes of ``g``) are merged and sorted.
    """
    th = TWO_PI * np.arange(n) / n
    vals = np.atleast_2d(np.asarray(g(r * np.exp(1j * th))))
    scale = np.max(np.abs(vals), axis=-1)
    real_rows = np.all(np.abs(vals.imag) <= _REAL_RTOL * np.maximum(scale, _TINY)[:, None], axis=-1)
    re = vals.real
    zeros = []
    for k in np.nonzero(real_rows)[0]:
        row, nxt = re[k], np.roll(re[k], -1)
        zeros.extend(th[np.abs(row) <= _REAL_RTOL * scale[k]])
        for j in np.nonzero(row * nxt < 0)[0]:
            a = th[j]
            zeros.append(_refine_zero(lambda t, k=k: _component(g, r, t, k), a, a + TWO_PI / n, row[j], nxt[j]))
    if not zeros:
        return ()
    zs = np.sort(np.mod(zeros, TWO_PI))
    keep = np.concatenate([[True], np.diff(zs) > _ZERO_MERGE])
    return tuple(zs[keep])


def _component(g, r, t, k):
    out = np.atleast_2d(np.asarray(g(r * np.exp(1j * np.array([t])))))
    return float(out[k, 0].real)


def _refine_zero(h, a, b, fa, fb, iters: int = 60) -> float:
    """Illinois false position on a bracketing interval ``a < b``."""
    last = 0
    for _ in range(iters):
        c = (a * fb - b * fa) / (fb - fa)
        if not a < c < b:
            c = 0.5 * (a + b)
        fc = h(c)
        if fc == 0.0 or b - a < _ZERO_XTOL:
            return c
        if fa * fc < 0:
            b, fb = c, fc
            if last == -1:
                fa *= 0.5
            last = -1
        else:
            a, fa = c, fc
            if last == 1:
                fb *= 0.5
            last = 1
    return 0.5 * (a + b)


def _as_result(x):
    x = np.asarray(x, dtype=float)
    return float(x) if x.ndim == 0 else x


def hardy_norm(g, p, r_grid, quad: QuadratureSpec | None = None) -> float:
    """``sup`` of ``M_p(r, g)`` over the given radii (a lower bound for the Hardy norm)."""
    radii = list(r_grid)
    if not radii:
        raise DomainError("r_grid must be nonempty")
    return max(integral_means(g, float(r), p, quad) for r in radii)
