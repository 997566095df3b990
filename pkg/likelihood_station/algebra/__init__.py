"""
Exact polynomial algebra: rings, Groebner bases and saturation

Kernel modules live in ``algebra.syzygy``.
"""

from .ring import (
    GREVLEX,
    LEX,
    BlockOrder,
    OrderSpec,
    PolynomialRing,
    differentiate,
    evaluate_point,
    format_poly,
    gradient,
    linear_substitute,
    parse_poly,
    poly_arith,
)
from .groebner import (
    Ideal,
    colength_zero_dim,
    dimension_codim,
    eliminate,
    groebner_basis,
    is_zero_dimensional,
    normal_form,
    quotient_saturate,
    saturate_by_factors,
    saturate_by_ideal,
    standard_monomials,
)

__all__ = [
    "GREVLEX",
    "LEX",
    "BlockOrder",
    "OrderSpec",
    "PolynomialRing",
    "differentiate",
    "evaluate_point",
    "format_poly",
    "gradient",
    "linear_substitute",
    "parse_poly",
    "poly_arith",
    "Ideal",
    "colength_zero_dim",
    "dimension_codim",
    "eliminate",
    "groebner_basis",
    "is_zero_dimensional",
    "normal_form",
    "quotient_saturate",
    "saturate_by_factors",
    "saturate_by_ideal",
    "standard_monomials",
]
