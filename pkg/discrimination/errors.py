"""Exception hierarchy for the discrimination package."""


class DiscriminationError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(DiscriminationError, ValueError):
    """Invalid parameters, non-physical operators or mismatched dimensions."""


class InvalidPovmError(ValidationError):
    """A measurement violates completeness or positivity."""


class DegenerateFilterError(ValidationError):
    """The unambiguous filter at alpha = 0 fails with certainty."""


class UndefinedConfidenceError(DiscriminationError):
    """A conditional probability was requested for an outcome that never occurs."""


class CircuitError(DiscriminationError):
    """An optical circuit is malformed or loses light."""
