"""Poisson-type extensions of alpha-harmonic functions on the unit disk.

The package evaluates ``u = P_alpha[f]`` and its first partials, integral
means over circles, the sharp constants bounding them, quasiconformality
checks, and parameter sweeps that test the bounds numerically.
"""

from . import boundary
from .boundary import (
    BoundaryFunction,
    curve_length,
    exp_mode,
    extremal_family,
    fourier_polynomial,
    lipschitz_constant,
    lp_norm,
    parse_boundary,
    trig_polynomial,
)
from .constants import (
    ConstantValue,
    constant,
    constant_A,
    constant_B,
    constant_C,
    constant_D,
    constant_E,
    constant_F,
    g_lemma,
    lemma24_check,
    sharp_A0,
)
from .core import (
    AlphaParam,
    DiskPoint,
    Partials,
    extension_and_partials,
    kernel,
    kernel_mean,
    partials,
    poisson_extend,
    t_alpha_residual,
)
from .errors import (
    AlphaHarmonicError,
    BoundarySpecError,
    ConditionError,
    ConfigError,
    ConvergenceError,
    DegeneracyError,
    DomainError,
    NotQuasiconformalError,
    QuadratureError,
    UnsupportedError,
)
from .harness import SweepConfig, load_config, parse_config, run_sweep, sharpness_study
from .means import LebesgueExponent, disk_function, hardy_norm, integral_means
from .qc import QcProfile, beltrami, circle_partial_integrals, qc_profile, verify_thm19, verify_thm110
from .quadrature import QuadratureSpec, count_nodes
from .records import VerificationRecord
from .specfun import beta, gamma, hyp2f1, hyp2f1_limit_at_1, log_gamma

__version__ = "0.1.0"

__all__ = [
    "AlphaHarmonicError",
    "AlphaParam",
    "BoundaryFunction",
    "BoundarySpecError",
    "ConditionError",
    "ConfigError",
    "ConstantValue",
    "ConvergenceError",
    "DegeneracyError",
    "DiskPoint",
    "DomainError",
    "LebesgueExponent",
    "NotQuasiconformalError",
    "Partials",
    "QcProfile",
    "QuadratureError",
    "QuadratureSpec",
    "SweepConfig",
    "UnsupportedError",
    "VerificationRecord",
    "beltrami",
    "beta",
    "boundary",
    "circle_partial_integrals",
    "constant",
    "constant_A",
    "constant_B",
    "constant_C",
    "constant_D",
    "constant_E",
    "constant_F",
    "count_nodes",
    "curve_length",
    "disk_function",
    "exp_mode",
    "extension_and_partials",
    "extremal_family",
    "fourier_polynomial",
    "g_lemma",
    "gamma",
    "hardy_norm",
    "hyp2f1",
    "hyp2f1_limit_at_1",
    "integral_means",
    "kernel",
    "kernel_mean",
    "lemma24_check",
    "lipschitz_constant",
    "load_config",
    "log_gamma",
    "lp_norm",
    "parse_boundary",
    "parse_config",
    "partials",
    "poisson_extend",
    "qc_profile",
    "run_sweep",
    "sharp_A0",
    "sharpness_study",
    "t_alpha_residual",
    "trig_polynomial",
    "verify_thm19",
    "verify_thm110",
]
