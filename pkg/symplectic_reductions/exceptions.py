"""
Exceptions

Domain errors raised by the toolkit. Every error is a ValueError so callers that
only guard against invalid input keep working.
"""


class SymplecticReductionError(ValueError):
    """Base class for all toolkit errors."""


class InvalidParameterError(SymplecticReductionError):
    """Raised when (group, n, m) or another parameter violates a stated constraint."""


class PartitionSizeError(SymplecticReductionError):
    """Raised when a partition does not have the size of the ambient matrices."""


class UnsupportedRegimeError(SymplecticReductionError):
    """Raised outside the implemented regime (e.g. parts > 2 in closure order)."""


class ExcludedRegimeError(SymplecticReductionError):
    """Raised for the odd-m regimes where the general fibre is reducible."""


class QuotientNotModeledError(SymplecticReductionError):
    """Raised when a quotient query is made for the orthogonal group (verdicts only)."""


class ShapeMismatchError(SymplecticReductionError):
    """Raised when matrices do not have the shapes prescribed by (n, m)."""


class NotInZeroFiberError(SymplecticReductionError):
    """Raised when a point is required to lie in the zero fibre of the moment map."""


class NotTwoNilpotentError(SymplecticReductionError):
    """Raised when an endomorphism F with F^2 != 0 is passed where F^2 = 0 is required."""


class RankBoundError(SymplecticReductionError):
    """Raised when a 2-nilpotent has rank above N and cannot factor through V."""


class NonGenericPointError(SymplecticReductionError):
    """Raised when a sampled point stays degenerate or a classifier needs full rank."""


class ResourceBoundError(SymplecticReductionError):
    """Raised when a computation would exceed the configured desk-scale bounds."""
