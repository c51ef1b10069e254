"""Shifted Grünwald approximations of fractional derivatives.

Generator coefficients from a closed form, weight expansion, formal order
checks, a grid operator with a convergence harness, and finite-difference
stencils for integer-order derivatives.
"""

__version__ = "0.1.0"

from .coeffgen import (
    BetaVector,
    GeneratorSpec,
    beta_explicit,
    beta_vandermonde,
    generate,
    lambda_of,
    moment_residual,
)
from .operator import GridFn, apply_shifted_grunwald, estimate_order, rl_derivative_power
from .stencil import Stencil, integer_stencil, render_stencil, stencil_moments
from .verify import OrderReport, g_series, verify_order
from .weights import DegenerateGeneratorError, WeightSeq, miller_weights, weights_series_oracle

__all__ = [
    "BetaVector",
    "GeneratorSpec",
    "beta_explicit",
    "beta_vandermonde",
    "generate",
    "lambda_of",
    "moment_residual",
    "GridFn",
    "apply_shifted_grunwald",
    "estimate_order",
    "rl_derivative_power",
    "Stencil",
    "integer_stencil",
    "render_stencil",
    "stencil_moments",
    "OrderReport",
    "g_series",
    "verify_order",
    "DegenerateGeneratorError",
    "WeightSeq",
    "miller_weights",
    "weights_series_oracle",
]
