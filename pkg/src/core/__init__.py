"""
Exact polynomial core of detq.

This package contains the fundamental algebra:
- Coefficient fields, rings and polynomials
- Groebner bases with explicit budgets
- Ideal operations and Hilbert series
"""

from .field import CoefficientField
from .ring import MonomialOrder, PolyRing
from .polynomial import Polynomial
from .groebner import Budget, GroebnerBasis
from .hilbert import HilbertData, hilbert_numerator
from .ideal import Ideal, graded_piece_dim, intersect, linked_ideal, quotient, saturate_ideal

__all__ = [
    'CoefficientField', 'MonomialOrder', 'PolyRing', 'Polynomial',
    'Budget', 'GroebnerBasis', 'HilbertData', 'hilbert_numerator',
    'Ideal', 'graded_piece_dim', 'intersect', 'linked_ideal', 'quotient', 'saturate_ideal',
]
