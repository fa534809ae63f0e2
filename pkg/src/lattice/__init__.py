"""
Intersection theory on blow-ups of P^3 along curves, chamber tables and
numerical identities
"""

from .blowup import ANTICANONICAL, CURVE_SPACE, DivisorClass, IteratedBlowup, chi_closed
from .chambers import ChamberTable, classify, cones
from .cubic_surface import SurfaceClass, cubic_class_solve

__all__ = [
    "ANTICANONICAL", "CURVE_SPACE", "DivisorClass", "IteratedBlowup", "chi_closed",
    "ChamberTable", "classify", "cones", "SurfaceClass", "cubic_class_solve",
]
