"""Exception types raised across the package."""


class AlphaHarmonicError(Exception):
    """Base class for all package errors."""


class DomainError(AlphaHarmonicError, ValueError):
    """An argument lies outside the domain of the operation."""


class ConditionError(DomainError):
    """A theorem hypothesis needed for the requested quantity is violated."""


class UnsupportedError(DomainError):
    """The (kind, exponent) combination is not covered."""


class ConvergenceError(AlphaHarmonicError, ArithmeticError):
    """A series or iteration did not converge.

    Attributes
    ----------
    partial : the last partial result (sum or estimate)
    count : number of terms or nodes used
    """

    def __init__(self, message, partial=None, count=None):
        super().__init__(message)
        self.partial = partial
        self.count = count


class QuadratureError(ConvergenceError):
    """Node doubling exhausted before two successive estimates agreed."""

    def __init__(self, message, previous=None, last=None, count=None):
        super().__init__(message, partial=last, count=count)
        self.previous = previous
        self.last = last


class DegeneracyError(AlphaHarmonicError, ArithmeticError):
    """The map is degenerate at a point (vanishing complex derivative)."""


class NotQuasiconformalError(AlphaHarmonicError):
    """The sampled Beltrami coefficient reaches modulus one."""

    def __init__(self, message, mu_max=None, location=None):
        super().__init__(message)
        self.mu_max = mu_max
        self.location = location


class BoundarySpecError(AlphaHarmonicError, ValueError):
    """A boundary-spec string could not be parsed."""

    def __init__(self, message, token=None, position=None):
        super().__init__(message)
        self.token = token
        self.position = position


class ConfigError(AlphaHarmonicError, ValueError):
    """A sweep configuration file is malformed."""
