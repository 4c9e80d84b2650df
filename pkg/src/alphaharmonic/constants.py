"""Sharp-constant functions A..F, their suprema, and the lemmas behind them.

Each r-dependent constant is evaluated through two routes (a circle
quadrature of its defining integral and a hypergeometric closed form); both
values and their gap travel in ``ConstantValue.diagnostics``. Supremum
constants are reported from their closed forms with a numerical supremum over
a radius grid attached for comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import AlphaParam, as_alpha
from .errors import ConditionError, DomainError, UnsupportedError
from .means import LebesgueExponent, as_exponent
from .quadrature import TWO_PI, QuadratureSpec, circle_mean, tanh_sinh
from .specfun import beta, gamma, hyp2f1, hyp2f1_limit_at_1, log_gamma

__all__ = [
    "ConstantValue",
    "R_GRID",
    "constant",
    "constant_A",
    "constant_B",
    "constant_C",
    "constant_D",
    "constant_E",
    "constant_F",
    "g_lemma",
    "g_lemma_closed_half_pi",
    "lemma24_check",
    "sharp_A0",
]

KINDS = ("A", "B", "C", "D", "E", "F")
R_GRID = tuple([0.1 * k for k in range(10)] + [0.95, 0.99])
# slack allowed when a supremum is compared with grid values
DOMINANCE_SLACK = 1e-9

_QUAD = QuadratureSpec(initial_nodes=256, max_doublings=12, tol=1e-12)


@dataclass(frozen=True)
class ConstantValue:
    """One of the constants A to F at one parameter tuple."""

    kind: str
    alpha: float
    p: float | None
    r: float | None
    value: float
    is_supremum: bool
    diagnostics: dict = field(default_factory=dict, compare=False)

    def __float__(self):
        return float(self.value)


# --- lemmas ------------------------------------------------------------------


def _one_plus_r2_2rcos(r: float, v):
    """1 + r^2 + 2 r cos t written in ``v = t - pi`` without cancellation."""
    return (1.0 - r) ** 2 + 4.0 * r * np.sin(0.5 * v) ** 2


def g_lemma(r: float, theta: float, k: float, m: float, quad: QuadratureSpec | None = None) -> float:
    """G(r, theta) = integral over [-pi, pi] of |cos(t - theta)|^k (1 + r^2 + 2r cos t)^m dt."""
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"r must lie in [0, 1], got {r!r}")
    if k < 0 or m <= -1:
        raise DomainError(f"need k >= 0 and m > -1, got k={k!r}, m={m!r}")
    if r == 1.0 and m <= -0.5:
        raise DomainError(f"G(1, theta) diverges for m <= -1/2 (m = {m!r})")
    quad = quad or _QUAD

    def integrand(v):
        t = v + math.pi
        return np.abs(np.cos(t - theta)) ** k * _one_plus_r2_2rcos(r, v) ** m

    # the base term vanishes at t = pi when r = 1; put that point at v = 0
    breaks = [theta + 0.5 * math.pi - math.pi, theta - 0.5 * math.pi - math.pi]
    value, _ = circle_mean(integrand, quad, breaks=breaks)
    return TWO_PI * float(value)


def g_lemma_closed_half_pi(k: float, m: float) -> float:
    """G(1, pi/2) = 2^(k + 2m + 1) B((k+1)/2, m + (k+1)/2)."""
    return 2.0 ** (k + 2.0 * m + 1.0) * beta(0.5 * (k + 1.0), m + 0.5 * (k + 1.0))


def g_lemma_bound(k: float, m: float, quad=None) -> tuple[float, str]:
    """The lemma's bound: G(1, 0) for m > 1, G(1, pi/2) otherwise."""
    if m > 1.0:
        return g_lemma(1.0, 0.0, k, m, quad), "G(1,0)"
    return g_lemma(1.0, 0.5 * math.pi, k, m, quad), "G(1,pi/2)"


def _singular_integral(h, e: float, quad) -> float:
    """Integral over [0, pi/2] of ``x^(e-1) h(x)`` with ``h`` regular at 0.

    For ``e < 1`` the substitution ``u = x^e`` turns it into the bounded
    integrand ``h(u^(1/e)) / e``; tanh-sinh alone truncates such strong
    endpoint singularities.
    """
    if e >= 1.0:
        value, _ = tanh_sinh(lambda x: x ** (e - 1.0) * h(x), 0.0, 0.5 * math.pi, quad)
    else:
        value, _ = tanh_sinh(lambda u: h(u ** (1.0 / e)) / e, 0.0, (0.5 * math.pi) ** e, quad)
    return float(value)


def _sinc(x):
    # sin(x) / x
    return np.sinc(x / math.pi)


def lemma24_check(mu: float, nu: float, r: float, quad: QuadratureSpec | None = None) -> tuple[float, float]:
    """Both sides of the sine-power integral identity.

    For ``0 <= r < 1``:
        integral_0^pi sin^(mu-1) t / (1 + r^2 - 2r cos t)^nu dt
            = B(mu/2, 1/2) F(nu, nu + (1-mu)/2; (1+mu)/2; r^2)
    (``mu = 1`` is the pure power case ``pi F(nu, nu; 1; r^2)``).
    For ``r = 1`` the limiting form with ``(1 - cos t)^(-nu)`` and the factor
    ``2^nu`` is used; it needs ``mu > 2 nu``.

    The left side is split at pi/2 so both endpoint singularities sit at 0.
    """
    if mu <= 0:
        raise DomainError(f"mu must be positive, got {mu!r}")
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"r must lie in [0, 1], got {r!r}")
    quad = quad or _QUAD
    a, b, c = nu, nu + 0.5 * (1.0 - mu), 0.5 * (1.0 + mu)
    bf = beta(0.5 * mu, 0.5)
    if r == 1.0:
        if mu - 2.0 * nu <= 0:
            raise DomainError(f"the r = 1 form needs mu > 2 nu, got mu={mu!r}, nu={nu!r}")
        # 2 sin^2(t/2) = t^2 sinc^2(t/2) / 2, so the singular power is t^(mu-1-2nu)
        near_zero = _singular_integral(
            lambda t: _sinc(t) ** (mu - 1.0) * (0.5 * _sinc(0.5 * t) ** 2) ** (-nu), mu - 2.0 * nu, quad
        )
        near_pi = _singular_integral(
            lambda x: _sinc(x) ** (mu - 1.0) * (2.0 * np.cos(0.5 * x) ** 2) ** (-nu), mu, quad
        )
        rhs = 2.0**nu * bf * hyp2f1_limit_at_1(a, b, c)
    else:
        near_zero = _singular_integral(
            lambda t: _sinc(t) ** (mu - 1.0) * ((1.0 - r) ** 2 + 4.0 * r * np.sin(0.5 * t) ** 2) ** (-nu), mu, quad
        )
        near_pi = _singular_integral(
            lambda x: _sinc(x) ** (mu - 1.0) * ((1.0 + r) ** 2 - 4.0 * r * np.sin(0.5 * x) ** 2) ** (-nu), mu, quad
        )
        rhs = bf * hyp2f1(a, b, c, r * r)
    return near_zero + near_pi, float(rhs)


# --- helpers -----------------------------------------------------------------


def _q_and_m(a: AlphaParam, pe: LebesgueExponent, kind: str):
    if pe.p == 1.0 or not pe.is_finite:
        raise UnsupportedError(f"constant {kind} needs 1 < p < inf, got p = {pe.p!r}")
    q = pe.q
    return q, 0.5 * ((2.0 + a.alpha) * q - 2.0)


def _check_r(r):
    if r is not None and not 0.0 <= r < 1.0:
        raise DomainError(f"r must lie in [0, 1), got {r!r}")


def _circle_s_mean(func, r: float, breaks=(), quad=None) -> float:
    """(1/2pi) * integral over s of func(s) with |1 + r e^{-is}| supplied.

    ``func`` receives ``(s, base)`` with ``base = |1 + r e^{-is}|^2``; the
    point s = pi where the base is smallest sits at the panel edge.
    """
    quad = quad or _QUAD

    def integrand(v):
        s = v + math.pi
        return func(s, _one_plus_r2_2rcos(r, v))

    value, _ = circle_mean(integrand, quad, breaks=[b - math.pi for b in breaks] + [0.0])
    return float(value)


def _power_mean(r: float, m: float, quad=None) -> float:
    """(1/2pi) * integral |1 + r e^{-is}|^(2m) ds by quadrature."""
    return _circle_s_mean(lambda s, base: base**m, r, quad=quad)


def _kinks(al: float, r: float) -> list:
    # zeros of alpha r - (alpha + 2) cos s; |alpha| r < alpha + 2 keeps them real
    s0 = math.acos(al * r / (al + 2.0))
    return [s0, TWO_PI - s0]


def _grid_sup(fn) -> tuple[float, float]:
    values = [(fn(r), r) for r in R_GRID]
    best = max(values)
    return best[0], best[1]


def _attach_sup(cv: ConstantValue, fn) -> ConstantValue:
    sup, at = _grid_sup(fn)
    cv.diagnostics.update(
        grid_sup=sup,
        grid_sup_at=at,
        grid=R_GRID,
        dominates=bool(cv.value >= sup - DOMINANCE_SLACK),
    )
    return cv


# --- pointwise constants A, B, C --------------------------------------------------


def constant_A(alpha, p, r: float | None = None, quad: QuadratureSpec | None = None) -> ConstantValue:
    """A_{alpha,p}(r) or, without ``r``, the supremum constant A_{alpha,p}.

    A(r) = c_alpha((alpha+2)^q/(2pi) G(r,0) + q(|alpha|r+alpha+2)^(q-1)|alpha|r F(-m,-m;1;r^2))^(1/q)
    with ``G`` taken at exponents ``k = q`` and ``m = ((2+alpha)q - 2)/2``.
    """
    a, pe = as_alpha(alpha), as_exponent(p)
    q, m = _q_and_m(a, pe, "A")
    al, c = a.alpha, a.c_alpha
    _check_r(r)
    lead = (al + 2.0) ** q / TWO_PI

    if r is not None:
        g = g_lemma(r, 0.0, q, m, quad)
        tail = q * (abs(al) * r + al + 2.0) ** (q - 1.0) * abs(al) * r
        closed = c * (lead * g + tail * hyp2f1(-m, -m, 1.0, r * r)) ** (1.0 / q)
        quadv = c * (lead * g + tail * _power_mean(r, m, quad)) ** (1.0 / q)

        def tilde_f(s, base):
            return np.abs(al * r - (al + 2.0) * np.cos(s)) ** q * base**m

        tilde = c * _circle_s_mean(tilde_f, r, _kinks(al, r), quad) ** (1.0 / q)
        return ConstantValue(
            "A", al, pe.p, r, closed, False,
            {"quadrature": quadv, "gap": abs(closed - quadv), "tilde": tilde, "G": g},
        )

    g, branch = g_lemma_bound(q, m, quad)
    limit = hyp2f1_limit_at_1(-m, -m, 1.0)
    tail = q * (abs(al) + al + 2.0) ** (q - 1.0) * abs(al)
    value = c * (lead * g + tail * limit) ** (1.0 / q)
    gamma_ratio = math.exp(log_gamma((al + 2.0) * q - 1.0) - 2.0 * log_gamma(0.5 * (al + 2.0) * q))
    diag = {
        "branch": branch,
        "G": g,
        "G_half_pi_closed": g_lemma_closed_half_pi(q, m),
        "G_half_pi_display": _display_g_half_pi(al, q),
        "gamma_ratio": gamma_ratio,
        "gap": abs(limit - gamma_ratio),
        "lemma_hypothesis_m_nonnegative": m >= 0,
    }
    cv = ConstantValue("A", al, pe.p, None, value, True, diag)
    return _attach_sup(cv, lambda rr: constant_A(a, pe, rr, quad).value)


def _display_g_half_pi(al: float, q: float) -> float:
    """The Gamma expression printed for G(1, pi/2); kept only as a diagnostic."""
    try:
        return (
            2.0 * math.sqrt(math.pi) * gamma(0.5 * (q + 1.0)) * gamma((2.0 * al + 5.0) * q - 3.0)
            / (gamma(0.5 * (al + 5.0) * q - 1.0) * gamma((al + 3.0) * q - 1.0))
        )
    except (DomainError, OverflowError):
        return math.nan


def sharp_A0(p) -> float:
    """The alpha = 0 sharp value 4^(1/p) pi^(-1/q) (integral |cos s|^q (1+cos s)^(q-1) ds)^(1/q)."""
    pe = as_exponent(p)
    q, _ = _q_and_m(AlphaParam(0.0), pe, "A")

    def integrand(v):
        s = v + math.pi
        return np.abs(np.cos(s)) ** q * (2.0 * np.sin(0.5 * v) ** 2) ** (q - 1.0)

    value, _ = circle_mean(integrand, _QUAD, breaks=[-0.5 * math.pi, 0.5 * math.pi])
    return 4.0 ** (1.0 / pe.p) * math.pi ** (-1.0 / q) * (TWO_PI * float(value)) ** (1.0 / q)


def _sin_power_integral(mu: float, nu: float, r: float, quad=None) -> float:
    lhs, _ = lemma24_check(mu, nu, r, quad)
    return lhs


def constant_B(alpha, p, r: float | None = None, quad: QuadratureSpec | None = None) -> ConstantValue:
    """B_{alpha,p}(r) or the supremum B_{alpha,p} (needs alpha + 2/p >= 0)."""
    a, pe = as_alpha(alpha), as_exponent(p)
    q, _ = _q_and_m(a, pe, "B")
    al, c = a.alpha, a.c_alpha
    _check_r(r)
    fa, fb, fc = 1.0 - 0.5 * (al + 3.0) * q, 1.0 - 0.5 * (al + 2.0) * q, 1.0 + 0.5 * q
    bq = beta(0.5 * (q + 1.0), 0.5)
    pref = (al + 2.0) * c / math.pi ** (1.0 / q)

    if r is not None:
        closed = pref * r * (bq * hyp2f1(fa, fb, fc, r * r)) ** (1.0 / q)
        # the Hoelder step directly: (alpha+2) c r (1-r^2)^(alpha+2+1/p) I_2^(1/q)
        i2 = _sin_power_integral(q + 1.0, (2.0 + 0.5 * al) * q, r, quad) / math.pi
        w = (1.0 - r) * (1.0 + r)
        quadv = (al + 2.0) * c * r * w ** (al + 2.0 + 1.0 / pe.p) * i2 ** (1.0 / q) if r > 0 else 0.0
        return ConstantValue("B", al, pe.p, r, closed, False, {"quadrature": quadv, "gap": abs(closed - quadv)})

    if al + 2.0 / pe.p < 0:
        raise ConditionError(
            f"the supremum B needs alpha + 2/p >= 0 (alpha={al!r}, p={pe.p!r}); only B(r) is available"
        )
    value = pref * (bq * hyp2f1_limit_at_1(fa, fb, fc)) ** (1.0 / q)
    cv = ConstantValue("B", al, pe.p, None, value, True, {})
    return _attach_sup(cv, lambda rr: constant_B(a, pe, rr, quad).value)


def constant_C(alpha, p, r: float | None = None, quad: QuadratureSpec | None = None) -> ConstantValue:
    """C_{alpha,p}(r) = c_alpha(|alpha|r/2 + 1 + alpha/2) F(-m,-m;1;r^2)^(1/q) or its supremum."""
    a, pe = as_alpha(alpha), as_exponent(p)
    q, m = _q_and_m(a, pe, "C")
    al, c = a.alpha, a.c_alpha
    _check_r(r)
    if r is not None:
        amp = c * (0.5 * abs(al) * r + 1.0 + 0.5 * al)
        closed = amp * hyp2f1(-m, -m, 1.0, r * r) ** (1.0 / q)
        quadv = amp * _power_mean(r, m, quad) ** (1.0 / q)

        def tilde_f(s, base):
            return np.abs(-0.5 * al * r + (1.0 + 0.5 * al) * np.exp(-1j * s)) ** q * base**m

        tilde = c * _circle_s_mean(tilde_f, r, quad=quad) ** (1.0 / q)
        return ConstantValue(
            "C", al, pe.p, r, closed, False, {"quadrature": quadv, "gap": abs(closed - quadv), "tilde": tilde}
        )
    limit = hyp2f1_limit_at_1(-m, -m, 1.0)
    gamma_ratio = math.exp(log_gamma((al + 2.0) * q - 1.0) - 2.0 * log_gamma(0.5 * (al + 2.0) * q))
    value = c * (0.5 * abs(al) + 1.0 + 0.5 * al) * limit ** (1.0 / q)
    cv = ConstantValue("C", al, pe.p, None, value, True, {"gamma_ratio": gamma_ratio, "gap": abs(limit - gamma_ratio)})
    return _attach_sup(cv, lambda rr: constant_C(a, pe, rr, quad).value)


# --- means constants D, E, F ------------------------------------------------------


def _inverse_c(a: AlphaParam) -> float:
    # Gamma(alpha+1) / Gamma(alpha/2+1)^2 = F(-alpha/2, -alpha/2; 1; 1) = 1 / c_alpha
    return hyp2f1_limit_at_1(-0.5 * a.alpha, -0.5 * a.alpha, 1.0)


def constant_D(alpha, r: float | None = None, quad: QuadratureSpec | None = None) -> ConstantValue:
    """D_alpha(r) = c_alpha((alpha+2)/(2pi) G(r,0;1,alpha/2) + |alpha| r F(-alpha/2,-alpha/2;1;r^2))."""
    a = as_alpha(alpha)
    al, c = a.alpha, a.c_alpha
    _check_r(r)
    m = 0.5 * al
    lead = (al + 2.0) / TWO_PI
    if r is not None:
        g = g_lemma(r, 0.0, 1.0, m, quad)
        closed = c * (lead * g + abs(al) * r * hyp2f1(-m, -m, 1.0, r * r))
        quadv = c * (lead * g + abs(al) * r * _power_mean(r, m, quad))

        def tilde_f(s, base):
            return np.abs(al * r - (al + 2.0) * np.cos(s)) * base**m

        tilde = c * _circle_s_mean(tilde_f, r, _kinks(al, r), quad)
        return ConstantValue("D", al, None, r, closed, False, {"quadrature": quadv, "gap": abs(closed - quadv), "tilde": tilde})
    if al > 2.0:
        g, branch = g_lemma(1.0, 0.0, 1.0, m, quad), "G(1,0)"
    else:
        g, branch = g_lemma(1.0, 0.5 * math.pi, 1.0, m, quad), "G(1,pi/2)"
    inv_c = _inverse_c(a)
    value = c * (lead * g + abs(al) * inv_c)
    diag = {
        "branch": branch,
        "G": g,
        "G_half_pi_closed": g_lemma_closed_half_pi(1.0, m),
        "gamma_ratio": inv_c,
        "lemma_hypothesis_m_nonnegative": m >= 0,
    }
    cv = ConstantValue("D", al, None, None, value, True, diag)
    return _attach_sup(cv, lambda rr: constant_D(a, rr, quad).value)


def constant_E(alpha, r: float | None = None, quad: QuadratureSpec | None = None) -> ConstantValue:
    """E_alpha(r) = (c_alpha/pi)((1+r)^(alpha+2) - (1-r)^(alpha+2)), supremum c_alpha 2^(alpha+2)/pi."""
    a = as_alpha(alpha)
    al, c = a.alpha, a.c_alpha
    _check_r(r)
    if r is not None:
        closed = c / math.pi * ((1.0 + r) ** (al + 2.0) - (1.0 - r) ** (al + 2.0))
        # (alpha+2) c/(2pi) (1-r^2)^(alpha+2) * integral r|sin t| / |1 - r e^{it}|^(4+alpha) dt
        quad = quad or _QUAD

        def integrand(v):
            d = (1.0 - r) ** 2 + 4.0 * r * np.sin(0.5 * v) ** 2
            return r * np.abs(np.sin(v)) * d ** (-(2.0 + 0.5 * al))

        mean, _ = circle_mean(integrand, quad, breaks=[math.pi])
        w = (1.0 - r) * (1.0 + r)
        quadv = (al + 2.0) * c * w ** (al + 2.0) * float(mean)
        return ConstantValue("E", al, None, r, closed, False, {"quadrature": quadv, "gap": abs(closed - quadv)})
    value = c * 2.0 ** (al + 2.0) / math.pi
    cv = ConstantValue("E", al, None, None, value, True, {})
    return _attach_sup(cv, lambda rr: constant_E(a, rr).value)


def constant_F(alpha, r: float | None = None, quad: QuadratureSpec | None = None) -> ConstantValue:
    """F_alpha(r) = c_alpha(|alpha|r/2 + 1 + alpha/2) F(-alpha/2,-alpha/2;1;r^2) or its supremum."""
    a = as_alpha(alpha)
    al, c = a.alpha, a.c_alpha
    _check_r(r)
    m = 0.5 * al
    if r is not None:
        amp = c * (0.5 * abs(al) * r + 1.0 + 0.5 * al)
        closed = amp * hyp2f1(-m, -m, 1.0, r * r)
        quadv = amp * _power_mean(r, m, quad)

        def tilde_f(s, base):
            return np.abs(-0.5 * al * r + (1.0 + 0.5 * al) * np.exp(-1j * s)) * base**m

        tilde = c * _circle_s_mean(tilde_f, r, quad=quad)
        return ConstantValue("F", al, None, r, closed, False, {"quadrature": quadv, "gap": abs(closed - quadv), "tilde": tilde})
    inv_c = _inverse_c(a)
    value = c * (0.5 * abs(al) + 1.0 + 0.5 * al) * inv_c
    cv = ConstantValue("F", al, None, None, value, True, {"gamma_ratio": inv_c})
    return _attach_sup(cv, lambda rr: constant_F(a, rr, quad).value)


def constant(kind: str, alpha, p=None, r: float | None = None, quad: QuadratureSpec | None = None) -> ConstantValue:
    """Dispatch on ``kind``; ``p`` is required for A, B, C and ignored for D, E, F."""
    if kind not in KINDS:
        raise DomainError(f"kind must be one of {KINDS}, got {kind!r}")
    if kind in "ABC":
        if p is None:
            raise DomainError(f"constant {kind} needs p")
        return {"A": constant_A, "B": constant_B, "C": constant_C}[kind](alpha, p, r, quad)
    return {"D": constant_D, "E": constant_E, "F": constant_F}[kind](alpha, r, quad)
