"""Transient free convection past an inclined plate started with velocity ~ t^2.

Closed-form temperature, concentration, and velocity fields in dimensionless
variables, an independent Crank-Nicolson finite-difference oracle, and the
verification machinery (error norms, residual scans, trend checks) tying the
two together. See the ``freeconv`` CLI for file-producing front ends.
"""

__version__ = "0.1.0"

from .accel import backend
from .analytic import (
    AppendixTerms,
    SingularPrandtl,
    SingularSchmidt,
    SolutionCoefficients,
    appendix_terms,
    coefficients,
    concentration,
    profile,
    temperature,
    velocity,
)
from .fdm import (
    ConvergenceLevel,
    FdmConfig,
    FdmSolution,
    NonFiniteField,
    OutOfDomain,
    convergence_study,
    sample_at,
    solve,
)
from .model import (
    FIELD_KINDS,
    DimensionalInputs,
    DimensionalPoint,
    EvalPoint,
    FlowParameters,
    ParameterError,
    Profile,
    nondimensionalize,
    similarity_eta,
    to_eval_point,
)
from .special import erfc, gauss_kernel, i2erfc
from .verify import (
    ComparisonReport,
    ResidualScan,
    TrendCheck,
    check_trend,
    compare,
    residual_scan,
)

__all__ = [
    "AppendixTerms",
    "ComparisonReport",
    "ConvergenceLevel",
    "DimensionalInputs",
    "DimensionalPoint",
    "EvalPoint",
    "FIELD_KINDS",
    "FdmConfig",
    "FdmSolution",
    "FlowParameters",
    "NonFiniteField",
    "OutOfDomain",
    "ParameterError",
    "Profile",
    "ResidualScan",
    "SingularPrandtl",
    "SingularSchmidt",
    "SolutionCoefficients",
    "TrendCheck",
    "appendix_terms",
    "backend",
    "check_trend",
    "coefficients",
    "compare",
    "concentration",
    "convergence_study",
    "erfc",
    "gauss_kernel",
    "i2erfc",
    "nondimensionalize",
    "profile",
    "residual_scan",
    "sample_at",
    "similarity_eta",
    "solve",
    "temperature",
    "to_eval_point",
    "velocity",
]
