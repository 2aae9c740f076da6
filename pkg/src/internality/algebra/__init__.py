"""Exact arithmetic kernel: constants, polynomials and rational functions in x."""

from fractions import Fraction as RatNum

from .coef import QQ, coef_field, coef_str, coef_to_fraction, param_names, to_fraction
from .numberfield import NFElement, NumberField
from .poly import (
    Poly,
    SquarefreeDecomposition,
    determinant,
    poly_gcd,
    poly_gcdex,
    resultant,
    solve_diophantine,
    squarefree_decompose,
    squarefree_part,
)
from .ratfunc import RatFunc, poly_part_and_proper, ratfunc_normalize
from .roots import RationalRoots, as_rational_poly, rational_roots_with_multiplicity

__all__ = [
    "QQ",
    "RatNum",
    "coef_field",
    "coef_str",
    "coef_to_fraction",
    "param_names",
    "to_fraction",
    "NumberField",
    "NFElement",
    "Poly",
    "SquarefreeDecomposition",
    "determinant",
    "poly_gcd",
    "poly_gcdex",
    "resultant",
    "solve_diophantine",
    "squarefree_decompose",
    "squarefree_part",
    "RatFunc",
    "poly_part_and_proper",
    "ratfunc_normalize",
    "RationalRoots",
    "as_rational_poly",
    "rational_roots_with_multiplicity",
]
