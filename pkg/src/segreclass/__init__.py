"""Segre classes of subschemes of projective space by general residual intersections."""

from .polyring import DEFAULT_PRIME, GREVLEX, LEX, Poly, PrimeField, Ring, TermOrder, block_order, parse_poly
from .groebner import GroebnerBasis, ResourceError, buchberger, ideal_membership, normal_form

__version__ = "0.1.0"
