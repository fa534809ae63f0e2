"""
Error types for detq
Every failure the library raises on purpose derives from DetqError
"""


class DetqError(Exception):
    """Root of all detq errors."""


class ResourceBudgetError(DetqError):
    """A degree, pair-count, time or window budget was exhausted.

    Raised instead of returning a possibly incomplete answer.
    """

    def __init__(self, budget: str, limit, message: str = ""):
        self.budget = budget
        self.limit = limit
        super().__init__(message or f"{budget} budget exceeded (limit {limit})")


class ParseError(DetqError, ValueError):
    """Malformed polynomial, ring declaration or matrix file."""


class RingMismatchError(DetqError, ValueError):
    """Operands live in different rings."""


class InhomogeneousError(DetqError, ValueError):
    """A generator is not homogeneous for the ring grading."""


class NotACurveError(DetqError, ValueError):
    """The ideal does not define a curve in projective 3-space."""


class PreconditionError(DetqError, ValueError):
    """An operation precondition failed; the message names the invariant."""


class LiaisonError(PreconditionError):
    """The linking forms are not in the ideal or do not form a complete intersection."""


class WindowBoundaryError(DetqError, ValueError):
    """Cohomology support touches the edge of the twist window."""


class LatticeError(DetqError, ValueError):
    """Inconsistent intersection-theoretic input or result."""
