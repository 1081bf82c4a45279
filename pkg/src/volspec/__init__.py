"""Spectral solution of scalar non-autonomous linear ODEs.

The initial value problem y'(t) = f(t) y(t), y(0) = 1 is solved by
expanding the causal kernel f(t) H(t - s) in a shifted orthonormal
Legendre basis, where kernel convolution becomes matrix multiplication
and the resolvent of the convolution series becomes a single banded
linear solve.  See :mod:`volspec.solver` for the pipeline.
"""

from .basis import LegendreBasis, eval_antiderivatives, eval_basis
from .coeffs import CoeffMatrix, coefficient_matrix, heaviside_matrix
from .diagnostics import (
    Diagnostics,
    matrix_diagnostics,
    numerical_bandwidth,
    singular_extremes,
    spectral_radius,
    spectrum,
)
from .errors import ConfigurationError, NumericalError, SolverError
from .functions import FunctionSpec, catalog, from_json
from .quadrature import QuadratureRule, gauss_legendre, integrate
from .reference import RKResult, reference_solution, rk_baseline
from .solver import (
    SolveResult,
    evaluate_solution,
    kernel_product,
    neumann_sum,
    neumann_terms_for_tolerance,
    resolvent_solve,
    solve_ode,
)

__version__ = "0.1.0"

__all__ = [
    "LegendreBasis",
    "eval_basis",
    "eval_antiderivatives",
    "QuadratureRule",
    "gauss_legendre",
    "integrate",
    "FunctionSpec",
    "catalog",
    "from_json",
    "CoeffMatrix",
    "coefficient_matrix",
    "heaviside_matrix",
    "Diagnostics",
    "numerical_bandwidth",
    "spectral_radius",
    "singular_extremes",
    "spectrum",
    "matrix_diagnostics",
    "SolveResult",
    "kernel_product",
    "resolvent_solve",
    "neumann_sum",
    "neumann_terms_for_tolerance",
    "solve_ode",
    "evaluate_solution",
    "reference_solution",
    "rk_baseline",
    "RKResult",
    "ConfigurationError",
    "NumericalError",
    "SolverError",
    "__version__",
]
