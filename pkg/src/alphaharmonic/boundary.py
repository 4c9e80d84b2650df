"""Boundary data on the unit circle.

A :class:`BoundaryFunction` is an evaluable map ``t -> f(e^{it})`` together
with the angles where it jumps or has a kink, optional exact ``L^p`` norms and,
for the extremal families, a native description in the Moebius variable ``s``
that quadrature can use instead of ``t``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .errors import BoundarySpecError, ConvergenceError, DomainError
from .quadrature import TWO_PI, QuadratureSpec, circle_mean

__all__ = [
    "BoundaryFunction",
    "NativeForm",
    "SubstitutionMap",
    "constant",
    "curve_length",
    "exp_mode",
    "extremal_family",
    "fourier_polynomial",
    "inverse_substitute",
    "lipschitz_constant",
    "lp_norm",
    "native_lp_norm",
    "parse_boundary",
    "substitute",
    "trig_polynomial",
]

EXTREMAL_KINDS = ("A", "B", "C", "Cbar", "D", "E", "F", "Fbar")
SAMPLE_GRID = 4096


def _scalar(x, name):
    # accept plain numbers or the parameter dataclasses
    return float(getattr(x, name, x))


@dataclass(frozen=True)
class SubstitutionMap:
    """Moebius change of variables ``e^{i(t-theta)} = (rho + e^{is}) / (1 + rho e^{is})``."""

    rho: float
    theta: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.rho < 1.0:
            raise DomainError(f"rho must lie in [0, 1), got {self.rho!r}")

    def offset(self, s):
        """``t - theta`` in (-pi, pi] as a function of ``s``."""
        w = np.exp(1j * np.asarray(s, dtype=float))
        return np.angle((self.rho + w) / (1.0 + self.rho * w))

    def jacobian(self, s):
        """dt/ds = (1 - rho^2) / |1 + rho e^{is}|^2."""
        s = np.asarray(s, dtype=float)
        rho = self.rho
        # |1 + rho e^{is}|^2 written without cancellation near s = pi
        denom = (1.0 - rho) ** 2 + 4.0 * rho * np.cos(0.5 * s) ** 2
        return (1.0 - rho * rho) / denom

    def inverse_offset(self, t):
        """``s`` in (-pi, pi] from the boundary angle ``t``."""
        w = np.exp(1j * (np.asarray(t, dtype=float) - self.theta))
        return np.angle((w - self.rho) / (1.0 - self.rho * w))


def substitute(m: SubstitutionMap, s):
    """Return ``(t, jacobian)`` for the Moebius substitution, with t in [0, 2pi)."""
    t = np.mod(m.theta + m.offset(s), TWO_PI)
    jac = m.jacobian(s)
    if np.ndim(t) == 0:
        return float(t), float(jac)
    return t, jac


def inverse_substitute(m: SubstitutionMap, t):
    """Closed-form inverse: ``e^{is} = (e^{i(t-theta)} - rho) / (1 - rho e^{i(t-theta)})``.

    Returns ``s`` in [0, 2pi).
    """
    s = np.mod(m.inverse_offset(t), TWO_PI)
    return float(s) if np.ndim(s) == 0 else s


@dataclass(frozen=True)
class NativeForm:
    """``f(e^{it}) = values(s)`` where ``t`` and ``s`` are linked by ``map``.

    ``s_breaks`` lists the angles in ``s`` where ``values`` jumps, has a kink
    or where the substitution itself is steepest.
    """

    map: SubstitutionMap
    values: Callable[[np.ndarray], np.ndarray]
    s_breaks: tuple = ()

    def scaled(self, a: complex) -> "NativeForm":
        g = self.values
        return replace(self, values=lambda s: a * g(s))


def _sorted_angles(angles) -> tuple:
    out = sorted({float(np.mod(a, TWO_PI)) for a in angles})
    return tuple(out)


@dataclass(frozen=True)
class BoundaryFunction:
    """Complex function on the unit circle, parameterised by the angle ``t``.

    ``exact_lp_norm`` holds ``(p, value)`` pairs; ``p = None`` means the
    value holds for every exponent (unimodular data, for instance).
    ``features`` are angles where the function is continuous but not smooth
    (or where it varies on a tiny scale); they become quadrature breakpoints
    just like ``discontinuities``.
    """

    evaluator: Callable[[np.ndarray], np.ndarray]
    discontinuities: tuple = ()
    exact_lp_norm: tuple = ()
    features: tuple = ()
    native: NativeForm | None = None
    fourier: dict | None = None
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "discontinuities", _sorted_angles(self.discontinuities))
        object.__setattr__(self, "features", _sorted_angles(self.features))

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        return np.asarray(self.evaluator(t), dtype=complex) * np.ones_like(t)

    @property
    def breaks(self) -> tuple:
        return _sorted_angles(self.discontinuities + self.features)

    @property
    def is_smooth(self) -> bool:
        return not self.breaks

    def known_lp_norm(self, p: float):
        for key, value in self.exact_lp_norm:
            if key is None or key == p:
                return value
        return None

    def scaled(self, a: complex) -> "BoundaryFunction":
        a = complex(a)
        g = self.evaluator
        return BoundaryFunction(
            evaluator=lambda t: a * g(t),
            discontinuities=self.discontinuities,
            exact_lp_norm=tuple((p, abs(a) * v) for p, v in self.exact_lp_norm),
            features=self.features,
            native=self.native.scaled(a) if self.native is not None else None,
            fourier=None if self.fourier is None else {k: a * c for k, c in self.fourier.items()},
            label=f"scale:{_fmt(a)},{self.label}",
        )

    def __add__(self, other: "BoundaryFunction") -> "BoundaryFunction":
        if not isinstance(other, BoundaryFunction):
            return NotImplemented
        f, g = self.evaluator, other.evaluator
        fourier = None
        if self.fourier is not None and other.fourier is not None:
            fourier = dict(self.fourier)
            for k, c in other.fourier.items():
                fourier[k] = fourier.get(k, 0.0) + c
        return BoundaryFunction(
            evaluator=lambda t: f(t) + g(t),
            discontinuities=self.discontinuities + other.discontinuities,
            features=self.features + other.features,
            fourier=fourier,
            label=f"sum:{self.label}+{other.label}",
        )

    def __mul__(self, a):
        return self.scaled(a)

    __rmul__ = __mul__


def _fmt(a: complex) -> str:
    a = complex(a)
    return repr(a.real) if a.imag == 0 else repr(a)


def constant(c: complex) -> BoundaryFunction:
    c = complex(c)
    return BoundaryFunction(
        evaluator=lambda t: np.full(np.shape(t), c),
        exact_lp_norm=((None, abs(c)),),
        fourier={0: c},
        label=f"const:{_fmt(c)}",
    )


def exp_mode(k: int) -> BoundaryFunction:
    """``e^{ikt}``."""
    k = int(k)
    return BoundaryFunction(
        evaluator=lambda t: np.exp(1j * k * t),
        exact_lp_norm=((None, 1.0),),
        fourier={k: 1.0 + 0j},
        label=f"exp:{k}",
    )


def fourier_polynomial(coeffs: dict, label: str = "") -> BoundaryFunction:
    """Finite sum of ``c_k e^{ikt}``."""
    ks = np.array(sorted(coeffs), dtype=float)
    cs = np.array([coeffs[k] for k in sorted(coeffs)], dtype=complex)

    def evaluate(t):
        t = np.asarray(t, dtype=float)
        return np.exp(1j * t[..., None] * ks) @ cs

    return BoundaryFunction(evaluator=evaluate, fourier=dict(coeffs), label=label)


def trig_polynomial(seed: int, degree: int) -> BoundaryFunction:
    """Random trigonometric polynomial of the given degree.

    Coefficients of ``e^{ikt}``, ``|k| <= degree``, have real and imaginary
    parts drawn uniformly from [-1, 1] with a seeded generator.
    """
    if degree < 0:
        raise DomainError("degree must be nonnegative")
    rng = np.random.default_rng(int(seed))
    n = 2 * degree + 1
    coef = rng.uniform(-1.0, 1.0, n) + 1j * rng.uniform(-1.0, 1.0, n)
    coeffs = {k: complex(c) for k, c in zip(range(-degree, degree + 1), coef)}
    return fourier_polynomial(coeffs, label=f"trigpoly:{int(seed)},{int(degree)}")


def _half_cos_sq(s):
    # 1 + cos s, accurate near s = pi
    return 2.0 * np.cos(0.5 * s) ** 2


def extremal_family(kind: str, alpha, p, rho: float, theta: float = 0.0) -> BoundaryFunction:
    """The extremal boundary data ``f_rho`` used in the sharpness arguments.

    Built natively in ``s`` and pulled back to ``t`` through the closed-form
    inverse substitution centred at ``theta``.
    """
    if kind not in EXTREMAL_KINDS:
        raise DomainError(f"unknown extremal kind {kind!r}; expected one of {EXTREMAL_KINDS}")
    a = _scalar(alpha, "alpha")
    pv = _scalar(p, "p")
    m = SubstitutionMap(float(rho), float(theta))
    if kind in ("A", "B", "C", "Cbar"):
        if not pv > 1.0:
            raise DomainError(f"extremal family {kind} needs p > 1, got p = {pv:g}")
    # q - 1; only the Hoelder families (p > 1) use it
    e = 0.0 if math.isinf(pv) or pv == 1.0 else 1.0 / (pv - 1.0)
    shrink = 1.0 - m.rho * m.rho
    jumps: tuple = ()
    kinks: tuple = (0.0, math.pi)

    if kind == "A":
        pref = shrink ** (-1.0 / pv) if not math.isinf(pv) else 1.0

        def g(s):
            c = np.cos(s)
            return pref * np.abs(c) ** e * _half_cos_sq(s) ** e * np.sign(c) + 0j

        jumps = (0.5 * math.pi, 1.5 * math.pi)
    elif kind == "B":
        pref = shrink ** (-3.0 * e)

        def g(s):
            sn = np.sin(s)
            return pref * np.abs(sn) ** e * _half_cos_sq(s) ** ((0.5 * a + 1.0) * e) * np.sign(sn) + 0j

        jumps = (0.0, math.pi)
    elif kind in ("C", "Cbar"):
        pref = shrink ** (-2.0 * e)
        sgn = 1.0 if kind == "C" else -1.0

        def g(s):
            return pref * _half_cos_sq(s) ** e * np.exp(sgn * 1j * s)

    elif kind == "D":

        def g(s):
            return np.sign(np.cos(s)) + 0j

        jumps = (0.5 * math.pi, 1.5 * math.pi)
    elif kind == "E":

        def g(s):
            return np.sign(np.sin(s)) + 0j

        jumps = (0.0, math.pi)
    else:
        sgn = 1.0 if kind == "F" else -1.0

        def g(s):
            return np.exp(sgn * 1j * np.asarray(s, dtype=float))

    def evaluate(t):
        return g(m.inverse_offset(t))

    def t_of(angles):
        return [m.theta + float(m.offset(s)) for s in angles]

    exact = ((None, 1.0),) if kind in ("D", "E", "F", "Fbar") else ()
    return BoundaryFunction(
        evaluator=evaluate,
        discontinuities=tuple(t_of(jumps)),
        exact_lp_norm=exact,
        features=tuple(t_of(kinks)),
        native=NativeForm(m, g, _sorted_angles(jumps + kinks)),
        label=f"extremal:{kind},{a!r},{pv!r},{float(rho)!r}",
    )


def _p_value(p) -> float:
    pv = _scalar(p, "p")
    if not pv >= 1.0:
        raise DomainError(f"p must be >= 1, got {pv!r}")
    return pv


def lp_norm(f: BoundaryFunction, p, quad: QuadratureSpec | None = None) -> float:
    """``((1/2pi) * integral |f|^p dt)^(1/p)``; ``p = inf`` gives a grid maximum.

    Panels are split at the declared discontinuities and features.
    """
    quad = quad or QuadratureSpec()
    pv = _p_value(p)
    if math.isinf(pv):
        t = TWO_PI * np.arange(SAMPLE_GRID) / SAMPLE_GRID
        return float(np.max(np.abs(f(t))))
    value, _ = circle_mean(lambda t: np.abs(f(t)) ** pv, quad, breaks=f.breaks)
    return float(value) ** (1.0 / pv)


def native_lp_norm(f: BoundaryFunction, p, quad: QuadratureSpec | None = None) -> float:
    """The same norm computed in the ``s`` variable with the jacobian folded in."""
    if f.native is None:
        raise DomainError("boundary function has no native s-representation")
    quad = quad or QuadratureSpec()
    pv = _p_value(p)
    nat = f.native
    if math.isinf(pv):
        s = TWO_PI * np.arange(SAMPLE_GRID) / SAMPLE_GRID
        return float(np.max(np.abs(nat.values(s))))
    value, _ = circle_mean(
        lambda s: np.abs(nat.values(s)) ** pv * nat.map.jacobian(s), quad, breaks=nat.s_breaks
    )
    return float(value) ** (1.0 / pv)


def curve_length(f: BoundaryFunction, tol: float = 1e-9, max_vertices: int = 2**22) -> float:
    """Length of the closed curve ``t -> f(e^{it})`` by inscribed polygons.

    The polygon starts with 64 vertices and is doubled until the relative
    change drops below ``tol``.
    """
    if f.discontinuities:
        raise DomainError("curve_length needs a continuous boundary function")
    n = 64
    prev = None
    while n <= max_vertices:
        z = f(TWO_PI * np.arange(n) / n)
        length = float(np.sum(np.abs(np.roll(z, -1) - z)))
        if prev is not None and abs(length - prev) <= tol * max(length, 1e-300):
            return length
        prev = length
        n *= 2
    raise ConvergenceError(
        f"polygon lengths still changing at {max_vertices} vertices; curve may not be rectifiable",
        partial=prev,
        count=max_vertices,
    )


def _chord_ratio_max(values: np.ndarray) -> float:
    n = values.size
    best = 0.0
    for k in range(1, n // 2 + 1):
        chord = 2.0 * math.sin(math.pi * k / n)
        diff = np.abs(np.roll(values, -k) - values)
        best = max(best, float(diff.max()) / chord)
    return best


def lipschitz_constant(f: BoundaryFunction, grid: int = 256, rtol: float = 1e-4, max_grid: int = 8192) -> float:
    """Largest chord ratio ``|f(t1) - f(t2)| / |e^{it1} - e^{it2}|`` over grid pairs.

    The grid is doubled until the estimate is stable to ``rtol``. The result
    is a lower bound for the Lipschitz constant.
    """
    if grid < 256:
        raise DomainError(f"grid must be >= 256, got {grid}")
    n = int(grid)
    prev = _chord_ratio_max(f(TWO_PI * np.arange(n) / n))
    while n < max_grid:
        n *= 2
        cur = _chord_ratio_max(f(TWO_PI * np.arange(n) / n))
        if abs(cur - prev) <= rtol * max(cur, 1e-300):
            return cur
        prev = cur
    return prev


# --- boundary-spec mini-language -------------------------------------------

_NUMBER = re.compile(r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?j?")
_NAME = re.compile(r"[A-Za-z]+")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        rest = self.text[self.pos :]
        token = re.split(r"[,:+]", rest, maxsplit=1)[0] if rest else "<end>"
        raise BoundarySpecError(
            f"{message} at position {self.pos} (token {token!r}) in {self.text!r}",
            token=token,
            position=self.pos,
        )

    def expect(self, ch: str):
        if self.text.startswith(ch, self.pos):
            self.pos += len(ch)
        else:
            self.error(f"expected {ch!r}")

    def name(self) -> str:
        m = _NAME.match(self.text, self.pos)
        if not m:
            self.error("expected a boundary kind")
        self.pos = m.end()
        return m.group()

    def number(self) -> complex:
        m = _NUMBER.match(self.text, self.pos)
        if not m:
            self.error("expected a number")
        self.pos = m.end()
        return complex(m.group())

    def real(self) -> float:
        start = self.pos
        if self.text.startswith("inf", self.pos):
            self.pos += 3
            return math.inf
        value = self.number()
        if value.imag != 0:
            self.pos = start
            self.error("expected a real number")
        return value.real

    def integer(self) -> int:
        start = self.pos
        value = self.real()
        if not value.is_integer():
            self.pos = start
            self.error("expected an integer")
        return int(value)

    def spec(self) -> BoundaryFunction:
        start = self.pos
        kind = self.name()
        self.expect(":")
        if kind == "const":
            return constant(self.number())
        if kind == "exp":
            return exp_mode(self.integer())
        if kind == "trigpoly":
            seed = self.integer()
            self.expect(",")
            return trig_polynomial(seed, self.integer())
        if kind == "extremal":
            m = _NAME.match(self.text, self.pos)
            if not m or m.group() not in EXTREMAL_KINDS:
                self.error("expected an extremal kind")
            self.pos = m.end()
            args = []
            for _ in range(3):
                self.expect(",")
                args.append(self.real())
            try:
                return extremal_family(m.group(), args[0], args[1], args[2])
            except DomainError as exc:
                self.pos = start
                self.error(str(exc))
        if kind == "sum":
            terms = [self.spec()]
            while self.text.startswith("+", self.pos):
                self.pos += 1
                terms.append(self.spec())
            if len(terms) < 2:
                self.error("sum needs at least two terms")
            out = terms[0]
            for term in terms[1:]:
                out = out + term
            return out
        if kind == "scale":
            a = self.number()
            self.expect(",")
            return self.spec().scaled(a)
        self.pos = start
        self.error(f"unknown boundary kind {kind!r}")


def parse_boundary(text: str) -> BoundaryFunction:
    """Build a boundary function from the spec language.

    ``const:<c>``, ``exp:<k>``, ``trigpoly:<seed>,<degree>``,
    ``extremal:<kind>,<alpha>,<p>,<rho>`` (``p`` may be ``inf``), ``sum:<spec>+<spec>[+...]`` and
    ``scale:<a>,<spec>``. The returned function keeps ``text`` as its label.
    """
    text = text.strip()
    parser = _Parser(text)
    f = parser.spec()
    if parser.pos != len(text):
        parser.error("unexpected trailing input")
    return replace(f, label=text)
