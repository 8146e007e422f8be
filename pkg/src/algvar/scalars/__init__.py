"""Exact scalar tower: Q, Q(zeta_12), polynomials and rational functions over it."""

from .cyclotomic import I, OMEGA, ZETA, Cyclotomic, is_number
from .poly import Poly, poly_gcd
from .ratfun import (
    NO_LIMIT,
    NoLimit,
    RatFun,
    as_ratfun,
    collapse,
    div,
    evaluate,
    is_scalar,
    limit_at_zero,
    normalize,
    substitute,
    t_valuation,
    variables,
)
from .expr import ExprError, parse_scalar, render, render_poly

__all__ = [
    "I", "OMEGA", "ZETA", "Cyclotomic", "is_number", "Poly", "poly_gcd", "NO_LIMIT",
    "NoLimit", "RatFun", "as_ratfun", "collapse", "div", "evaluate", "is_scalar",
    "limit_at_zero", "normalize", "substitute", "t_valuation", "variables",
    "ExprError", "parse_scalar", "render", "render_poly",
]
