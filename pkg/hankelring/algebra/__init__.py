"""
Exact arithmetic: coefficient fields, monomial orders, polynomials and polynomial matrices.
"""
from hankelring.algebra.coefficients import PrimeField, RationalField, field_from_tag
from hankelring.algebra.rings import DEGREVLEX, LEX, MonomialOrder, PolynomialRing
from hankelring.algebra.polynomials import Polynomial, leading_term, poly_arith
from hankelring.algebra.matrices import det, generic_matrix, hankel_matrix, minor
