"""
Graded homology: minimal free resolutions, sheaf cohomology of space curves
and the Hartshorne-Rao classifier
"""

from .resolution import BettiTable, FreeResolution, minimal_resolution, minimal_resolution_betti
from .cohomology import CohomologyTable, HRModule, curve_cohomology, hartshorne_rao
from .classifier import CurveClass, classify_curve, liaison_identity_report, residual_hr_case

__all__ = [
    "BettiTable", "FreeResolution", "minimal_resolution", "minimal_resolution_betti",
    "CohomologyTable", "HRModule", "curve_cohomology", "hartshorne_rao",
    "CurveClass", "classify_curve", "liaison_identity_report", "residual_hr_case",
]
