"""Circle quadrature with node doubling.

Two rules are used:

* the periodic trapezoid rule for integrands that are smooth on the whole
  circle (spectrally accurate, every doubling reuses the previous nodes);
* a tanh-sinh rule on each panel between breakpoints when the integrand has
  jumps, kinks or endpoint singularities. Its nodes are themselves trapezoid
  nodes in the transformed variable, so step halving again reuses nodes.

All integrands are vectorised: ``func(v)`` receives a 1-D array of nodes and
returns an array whose *last* axis runs over the nodes. Leading axes are
integrated independently and share the node set.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, QuadratureError

TWO_PI = 2.0 * math.pi

# tanh-sinh truncation in the transformed variable
_TS_TMAX = 4.0
_TS_LEVELS = 14

_node_tally: ContextVar[list | None] = ContextVar("_node_tally", default=None)


@contextmanager
def count_nodes(propagate: bool = True):
    """Collect the number of integrand nodes evaluated inside the block.

    Yields a one-element list whose entry is updated in place. With
    ``propagate`` the count is also added to any enclosing block.
    """
    tally = [0]
    token = _node_tally.set(tally)
    try:
        yield tally
    finally:
        _node_tally.reset(token)
        if propagate:
            tally_nodes(tally[0])


def tally_nodes(n: int) -> None:
    """Add ``n`` to the innermost active :func:`count_nodes` block."""
    tally = _node_tally.get()
    if tally is not None:
        tally[0] += int(n)


@dataclass(frozen=True)
class QuadratureSpec:
    """Node-doubling controls shared by all circle integrals.

    ``initial_nodes`` is a lower bound; callers raise it when the integrand
    has a peak of width about ``1 - r``.
    """

    initial_nodes: int = 256
    max_doublings: int = 10
    tol: float = 1e-10
    # integrals whose successive estimates differ by less than this are
    # accepted whatever their size (roundoff noise of vanishing integrands)
    atol: float = 0.0

    def __post_init__(self):
        n = self.initial_nodes
        if n < 16 or n % 16 or (n // 16) & (n // 16 - 1):
            raise DomainError(f"initial_nodes must be 16 * 2^k, got {n}")
        if self.tol <= 0:
            raise DomainError("tol must be positive")
        if self.atol < 0:
            raise DomainError("atol must be nonnegative")
        if self.max_doublings < 0:
            raise DomainError("max_doublings must be nonnegative")

    def nodes_for_radius(self, r: float) -> int:
        """Starting node count for a kernel peak of width ~ (1 - r)."""
        need = max(self.initial_nodes, math.ceil(64.0 / max(1.0 - r, 1e-12)))
        return 16 * 2 ** math.ceil(math.log2(need / 16))


def _converged(new, old, spec, mass):
    # relative to the integral of |integrand|: a value that cancels to
    # nearly zero cannot be resolved any better than that
    diff = np.abs(np.asarray(new) - np.asarray(old))
    scale = np.maximum(np.abs(new), np.asarray(mass))
    return bool(np.all(diff <= np.maximum(spec.tol * scale, spec.atol)))


def periodic_mean(func, n0: int, spec: QuadratureSpec, offset: float = 0.0):
    """Mean value (1/2pi) * integral over one period, trapezoid rule.

    Nodes are ``offset + 2 pi j / n``. Returns ``(value, nodes_used)``.
    """
    n = int(n0)
    v = offset + TWO_PI * np.arange(n) / n
    vals = func(v)
    total = np.sum(vals, axis=-1)
    mass = np.sum(np.abs(vals), axis=-1)
    tally_nodes(n)
    est = total / n
    prev = None
    for _ in range(spec.max_doublings):
        v = offset + TWO_PI * (np.arange(n) + 0.5) / n
        vals = func(v)
        total = total + np.sum(vals, axis=-1)
        mass = mass + np.sum(np.abs(vals), axis=-1)
        tally_nodes(n)
        n *= 2
        new = total / n
        if _converged(new, est, spec, mass / n):
            return new, n
        prev, est = est, new
    raise QuadratureError(
        f"trapezoid rule did not converge with {n} nodes", previous=prev, last=est, count=n
    )


def _ts_nodes(level: int, odd_only: bool):
    h = 2.0 ** -level
    kmax = int(_TS_TMAX / h)
    k = np.arange(-kmax, kmax + 1)
    if odd_only:
        k = k[k % 2 != 0]
    tau = k * h
    u = 0.5 * math.pi * np.sinh(tau)
    # fractions of the panel measured from each end, free of cancellation
    left = 1.0 / (1.0 + np.exp(-2.0 * u))
    right = 1.0 / (1.0 + np.exp(2.0 * u))
    w = 0.5 * math.pi * np.cosh(tau) / np.cosh(u) ** 2
    return tau, left, right, w, h


def _panel_nodes(a: np.ndarray, b: np.ndarray, level: int, odd_only: bool):
    tau, left, right, w, h = _ts_nodes(level, odd_only)
    length = (b - a)[:, None]
    x = np.where(tau[None, :] <= 0, a[:, None] + length * left, b[:, None] - length * right)
    weights = 0.5 * length * w[None, :] * h
    inside = (x > a[:, None]) & (x < b[:, None]) & (weights > 0)
    return x[inside], weights[inside]


def panel_integral(func, breaks, spec: QuadratureSpec):
    """Integral over consecutive panels ``[breaks[i], breaks[i+1]]``.

    tanh-sinh on every panel, step halving until two successive sums agree.
    Returns ``(value, nodes_used)``.
    """
    pts = np.asarray(breaks, dtype=float)
    a, b = pts[:-1], pts[1:]
    keep = b > a
    a, b = a[keep], b[keep]
    level = 1
    prev = None
    x, w = _panel_nodes(a, b, 0, False)
    vals = func(x)
    est = np.sum(vals * w, axis=-1)
    mass = np.sum(np.abs(vals) * w, axis=-1)
    used = x.size
    tally_nodes(x.size)
    # level 0 and 1 together form the first genuine estimate
    x, w = _panel_nodes(a, b, level, True)
    vals = func(x)
    est = 0.5 * est + np.sum(vals * w, axis=-1)
    mass = 0.5 * mass + np.sum(np.abs(vals) * w, axis=-1)
    used += x.size
    tally_nodes(x.size)
    for level in range(2, min(4 + spec.max_doublings, _TS_LEVELS) + 1):
        x, w = _panel_nodes(a, b, level, True)
        vals = func(x)
        new = 0.5 * est + np.sum(vals * w, axis=-1)
        mass = 0.5 * mass + np.sum(np.abs(vals) * w, axis=-1)
        used += x.size
        tally_nodes(x.size)
        if _converged(new, est, spec, mass) and level >= 3:
            return new, used
        prev, est = est, new
    raise QuadratureError(
        f"tanh-sinh did not converge after {level} levels", previous=prev, last=est, count=used
    )


def circle_mean(func, spec: QuadratureSpec, *, breaks=(), n0: int | None = None):
    """(1/2pi) * integral of ``func(v)`` over ``v`` in [-pi, pi).

    Without breaks the periodic trapezoid rule is used. With breaks the circle
    is cut at every break (taken modulo 2pi into [-pi, pi)) and also at 0 and
    -pi, and each panel is integrated with tanh-sinh. Callers place the
    sharpest feature of the integrand at ``v = 0`` so that nodes close to it
    keep full relative precision.
    """
    if len(breaks) == 0:
        return periodic_mean(func, n0 or spec.initial_nodes, spec, offset=-math.pi)
    cuts = np.mod(np.asarray(breaks, dtype=float) + math.pi, TWO_PI) - math.pi
    cuts = np.unique(np.concatenate([cuts, [-math.pi, 0.0, math.pi]]))
    value, used = panel_integral(func, cuts, spec)
    return value / TWO_PI, used


def tanh_sinh(func, a: float, b: float, spec: QuadratureSpec):
    """Integral over [a, b]; endpoint singularities are allowed."""
    return panel_integral(func, [a, b], spec)


def panel_nodes(breaks, level: int):
    """Full tanh-sinh node set of the given level on consecutive panels.

    Returns ``(x, w)`` with ``sum(w * g(x))`` approximating the integral of
    ``g`` over ``[breaks[0], breaks[-1]]``. Used where several integrals
    must share one fixed rule (finite-difference stencils).
    """
    pts = np.asarray(breaks, dtype=float)
    a, b = pts[:-1], pts[1:]
    keep = b > a
    x, w = _panel_nodes(a[keep], b[keep], level, False)
    order = np.argsort(x, kind="stable")
    return x[order], w[order]
