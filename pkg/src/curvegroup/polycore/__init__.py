"""Exact sparse polynomial arithmetic, Groebner bases over F_p and univariate kernels."""

from .fields import DEFAULT_PRIME, GF, QQ, SECOND_PRIME, DenominatorDivisible, PrimeField, RationalField
from .groebner import INFINITE, groebner, minimal_polynomial, quotient_dimension, reduce, standard_monomials
from .poly import (
    DomainMismatch,
    MultiPoly,
    NotDivisible,
    WeightedGrading,
    dehomogenize,
    diff,
    exact_divide,
    format_poly,
    is_weighted_homogeneous,
    linear_change,
    parse_poly,
    partials,
    specialize,
    substitute,
    substitute_homogeneous,
    weighted_degree,
)
from .univariate import eliminant, resultant, squarefree_part

__all__ = [
    "DEFAULT_PRIME",
    "GF",
    "INFINITE",
    "QQ",
    "SECOND_PRIME",
    "DenominatorDivisible",
    "DomainMismatch",
    "MultiPoly",
    "NotDivisible",
    "PrimeField",
    "RationalField",
    "WeightedGrading",
    "dehomogenize",
    "diff",
    "eliminant",
    "exact_divide",
    "format_poly",
    "groebner",
    "is_weighted_homogeneous",
    "linear_change",
    "minimal_polynomial",
    "parse_poly",
    "partials",
    "quotient_dimension",
    "reduce",
    "resultant",
    "specialize",
    "squarefree_part",
    "standard_monomials",
    "substitute",
    "substitute_homogeneous",
    "weighted_degree",
]
