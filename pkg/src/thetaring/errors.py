"""Exception types shared across the package."""


class ThetaRingError(Exception):
    """Base class for every error raised by this package."""


class DomainError(ThetaRingError):
    """Input outside the mathematical domain (e.g. a non-convergent period)."""


class PrecisionError(ThetaRingError):
    """The requested tolerance cannot be certified in working precision."""


class UsageError(ThetaRingError):
    """Operands that do not fit together (family or degree mismatch)."""


class SingularMatrixError(ThetaRingError):
    """Linear system rejected because a pivot fell below threshold."""

    def __init__(self, message: str, pivot: float):
        super().__init__(message)
        self.pivot = pivot


class DegeneracyError(ThetaRingError):
    """A genericity condition failed; ``condition`` names the violated one."""

    def __init__(self, message: str, condition: str):
        super().__init__(message)
        self.condition = condition


class ModelError(ThetaRingError):
    """An internal cross-check failed (support leak, route disagreement,
    or an unverifiable relation set)."""
