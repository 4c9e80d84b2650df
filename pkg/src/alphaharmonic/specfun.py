"""Real special functions: Gamma, Beta, Pochhammer and Gauss 2F1.

Everything here works on real arguments only. The hypergeometric function is
evaluated from its power series on ``0 <= x < 1``; the value at ``x = 1`` is
available separately through Gauss's summation formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError

__all__ = [
    "HypArgs",
    "beta",
    "gamma",
    "log_gamma",
    "hyp2f1",
    "hyp2f1_derivative",
    "hyp2f1_limit_at_1",
    "pochhammer",
]

# Lanczos approximation, g = 7, nine coefficients.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

MAX_TERMS = 100_000
# direct summation above the Euler switch may need many more terms
MAX_TERMS_NEAR_ONE = 5_000_000
EULER_SWITCH = 0.75
# beyond this x the 1 - x connection formula is used when c - a - b is not
# close to an integer (at integers its Gamma factors have poles)
CONNECTION_SWITCH = 0.95
CONNECTION_MIN_GAP = 0.05


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


def _lanczos_sum(x: float) -> float:
    # x is the shifted argument (original minus one)
    acc = _LANCZOS[0]
    for i, coef in enumerate(_LANCZOS[1:], start=1):
        acc += coef / (x + i)
    return acc


def gamma(x: float) -> float:
    """Gamma function for real ``x`` that is not a pole.

    Raises
    ------
    DomainError
        If ``x`` is 0, -1, -2, ...
    """
    x = float(x)
    if _is_nonpositive_integer(x):
        raise DomainError(f"gamma has a pole at x = {x:g}")
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))
    if x > 171.0:
        raise DomainError(f"gamma({x:g}) overflows double precision")
    if x.is_integer():
        return float(math.factorial(int(x) - 1))
    y = x - 1.0
    t = y + _LANCZOS_G + 0.5
    # split the power to delay overflow for large x
    half = t ** (0.5 * (y + 0.5))
    return math.sqrt(2.0 * math.pi) * half * math.exp(-t) * half * _lanczos_sum(y)


def log_gamma(x: float) -> float:
    """``log(Gamma(x))`` for ``x > 0``."""
    x = float(x)
    if x <= 0:
        raise DomainError(f"log_gamma needs x > 0, got {x:g}")
    if x < 0.5:
        return math.log(math.pi / math.sin(math.pi * x)) - log_gamma(1.0 - x)
    y = x - 1.0
    t = y + _LANCZOS_G + 0.5
    return 0.5 * math.log(2.0 * math.pi) + (y + 0.5) * math.log(t) - t + math.log(_lanczos_sum(y))


def beta(u: float, v: float) -> float:
    """Euler Beta function B(u, v) = Gamma(u) Gamma(v) / Gamma(u + v), u, v > 0."""
    if u <= 0 or v <= 0:
        raise DomainError(f"beta needs positive arguments, got ({u:g}, {v:g})")
    if u + v < 150:
        return gamma(u) * gamma(v) / gamma(u + v)
    return math.exp(log_gamma(u) + log_gamma(v) - log_gamma(u + v))


def pochhammer(a: float, n: int) -> float:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1."""
    if n < 0:
        raise DomainError(f"pochhammer needs n >= 0, got {n}")
    out = 1.0
    for k in range(int(n)):
        out *= a + k
    return out


@dataclass(frozen=True)
class HypArgs:
    """Parameters of F(a, b; c; x) restricted to the real interval 0 <= x < 1."""

    a: float
    b: float
    c: float
    x: float

    def __post_init__(self):
        if _is_nonpositive_integer(self.c):
            raise DomainError(f"c = {self.c:g} is a nonpositive integer")
        if not 0.0 <= self.x < 1.0:
            raise DomainError(f"x = {self.x!r} outside [0, 1); use hyp2f1_limit_at_1 for x = 1")


def _series(a: float, b: float, c: float, x: float, tol: float, cap: int) -> float:
    """Direct summation with a Neumaier-compensated accumulator."""
    total, comp = 1.0, 0.0
    term = 1.0
    if x == 0.0:
        return 1.0
    terminating = _is_nonpositive_integer(a) or _is_nonpositive_integer(b)
    # beyond this index the term ratio is monotone in n
    settled = int(abs(a) + abs(b) + abs(c)) + 2
    for n in range(cap):
        factor = (a + n) * (b + n) / ((c + n) * (n + 1.0))
        term *= factor * x
        if term == 0.0:
            return total + comp
        s = total + term
        if abs(total) >= abs(term):
            comp += (total - s) + term
        else:
            comp += (term - s) + total
        total = s
        if terminating or n < settled:
            continue
        # geometric bound on the tail
        nxt = abs((a + n + 1) * (b + n + 1) / ((c + n + 1) * (n + 2.0))) * x
        ratio = max(nxt, x)
        if ratio < 1.0 and abs(term) * ratio / (1.0 - ratio) <= tol * abs(total + comp):
            return total + comp
    raise ConvergenceError(
        f"2F1({a:g},{b:g};{c:g};{x:g}) did not converge in {cap} terms",
        partial=total + comp,
        count=cap,
    )


def hyp2f1(a, b=None, c=None, x=None, tol: float = 1e-15) -> float:
    """Gauss hypergeometric function F(a, b; c; x) for 0 <= x < 1.

    Accepts either a :class:`HypArgs` or the four numbers. For ``x > 0.75``
    with ``c - a - b < 0`` the Euler transformation
    ``F(a,b;c;x) = (1-x)^(c-a-b) F(c-a, c-b; c; x)`` is applied first so the
    summed series has positive parameter excess. For ``x > 0.95`` with
    ``c - a - b`` away from the integers the two-term connection formula in
    ``1 - x`` is used instead, since the series in ``x`` converges slowly there.
    """
    args = a if isinstance(a, HypArgs) else HypArgs(float(a), float(b), float(c), float(x))
    if tol <= 0:
        raise DomainError("tol must be positive")
    a, b, c, x = args.a, args.b, args.c, args.x
    if _is_nonpositive_integer(a) or _is_nonpositive_integer(b):
        return _series(a, b, c, x, tol, MAX_TERMS)
    excess = c - a - b
    if x > CONNECTION_SWITCH and abs(excess - round(excess)) >= CONNECTION_MIN_GAP:
        return _connection(a, b, c, x, tol)
    if x > EULER_SWITCH and excess < 0:
        return (1.0 - x) ** excess * _series(c - a, c - b, c, x, tol, MAX_TERMS_NEAR_ONE)
    return _series(a, b, c, x, tol, MAX_TERMS if x <= EULER_SWITCH else MAX_TERMS_NEAR_ONE)


def _rgamma(x: float) -> float:
    """1 / Gamma(x), zero at the poles."""
    return 0.0 if _is_nonpositive_integer(x) else 1.0 / gamma(x)


def _connection(a: float, b: float, c: float, x: float, tol: float) -> float:
    """F(a,b;c;x) through two series in 1 - x (non-integer c - a - b)."""
    s = c - a - b
    y = 1.0 - x
    g = gamma(c)
    first = g * gamma(s) * _rgamma(c - a) * _rgamma(c - b)
    second = g * gamma(-s) * _rgamma(a) * _rgamma(b)
    out = 0.0
    if first:
        out += first * _series(a, b, 1.0 - s, y, tol, MAX_TERMS)
    if second:
        out += second * y**s * _series(c - a, c - b, 1.0 + s, y, tol, MAX_TERMS)
    return out


def hyp2f1_limit_at_1(a: float, b: float, c: float) -> float:
    """Gauss summation: F(a, b; c; 1) = G(c) G(c-a-b) / (G(c-a) G(c-b)).

    Requires ``c - a - b > 0``.
    """
    excess = c - a - b
    if excess <= 0:
        raise DomainError(f"F(a,b;c;1) diverges: c - a - b = {excess:g} <= 0")
    if _is_nonpositive_integer(c):
        raise DomainError(f"c = {c:g} is a nonpositive integer")
    # 1/Gamma vanishes at poles: the series terminates and the limit is finite
    if _is_nonpositive_integer(c - a) or _is_nonpositive_integer(c - b):
        return 0.0
    if a == 0 or b == 0:
        return 1.0
    args = (c, excess, c - a, c - b)
    if max(abs(v) for v in args) < 170:
        return gamma(c) * gamma(excess) / (gamma(c - a) * gamma(c - b))
    if min(args) <= 0:
        raise DomainError("Gauss summation arguments too large for double precision")
    return math.exp(log_gamma(c) + log_gamma(excess) - log_gamma(c - a) - log_gamma(c - b))


def hyp2f1_derivative(a, b=None, c=None, x=None, tol: float = 1e-15) -> float:
    """dF/dx = (ab/c) F(a+1, b+1; c+1; x)."""
    args = a if isinstance(a, HypArgs) else HypArgs(float(a), float(b), float(c), float(x))
    if args.a == 0 or args.b == 0:
        return 0.0
    return args.a * args.b / args.c * hyp2f1(args.a + 1, args.b + 1, args.c + 1, args.x, tol=tol)
