"""Exception types shared across the package."""


class SmdiffError(Exception):
    """Base class for all package errors."""


class InvalidDiscriminant(SmdiffError):
    """Raised for integers that are not imaginary quadratic discriminants."""


class UnsupportedTarget(SmdiffError):
    """Raised when a class-number listing cannot be certified complete."""


class WrongClassNumber(SmdiffError):
    """Raised when an operation requires a specific class number."""


class NoSmallerConductor(SmdiffError):
    """Raised when a conductor-1 discriminant has no smaller-conductor moduli."""


class PrecisionExhausted(SmdiffError):
    """Raised when a radius target cannot be met at the precision cap."""


class Indeterminate(SmdiffError):
    """A certified comparison could not be decided at the working precision.

    Callers are expected to retry at higher precision; this is never
    silently converted into a boolean answer.
    """


class DepthExhausted(SmdiffError):
    """Adaptive subdivision hit its depth limit without a certificate."""


class UnknownInequality(SmdiffError):
    """Raised for identifiers missing from the inequality catalog."""


class IntervalDomainError(SmdiffError):
    """Raised when an interval operation leaves its mathematical domain."""
