"""Exact coefficient arithmetic: Q[eps] scalars, sparse polynomials, hbar series."""

from .expr import (
    Expr,
    ExpansionError,
    ParseError,
    dump_series,
    expand_expr,
    format_poly,
    parse_expr,
    parse_poly,
    parse_series_dump,
    variable_names,
)
from .hseries import HSeries, OrderMismatch, mpoly_subst, substitute_series
from .mpoly import EPS, ArityError, Coeff, MPoly, coeff, coeff_inverse, specialize_epsilon

__all__ = [
    "ArityError", "Coeff", "EPS", "ExpansionError", "Expr", "HSeries", "MPoly", "OrderMismatch",
    "ParseError", "coeff", "coeff_inverse", "dump_series", "expand_expr", "format_poly",
    "mpoly_subst", "parse_expr", "parse_poly", "parse_series_dump", "specialize_epsilon",
    "substitute_series", "variable_names",
]
