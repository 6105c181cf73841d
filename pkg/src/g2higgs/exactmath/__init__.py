"""Exact scalar, polynomial and linear-algebra substrate."""

from .scalars import (
    PreconditionError,
    QuadraticNumber,
    Rational,
    as_rational,
    format_float,
    format_rational,
    format_scalar,
    parse_scalar,
    rational_sqrt,
)
from .mpoly import GLOBAL_ORDER, MPoly, parse_poly, partial_derivative, poly_arith, variables
from .linalg import RatMatrix, exact_rank, numeric_rank, transpose
from .univariate import univariate_discriminant

__all__ = [
    "GLOBAL_ORDER",
    "MPoly",
    "PreconditionError",
    "QuadraticNumber",
    "RatMatrix",
    "Rational",
    "as_rational",
    "exact_rank",
    "format_float",
    "format_rational",
    "format_scalar",
    "numeric_rank",
    "parse_scalar",
    "parse_poly",
    "partial_derivative",
    "poly_arith",
    "rational_sqrt",
    "transpose",
    "univariate_discriminant",
    "variables",
]
