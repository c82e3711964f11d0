"""Exception taxonomy shared by all coxlim modules.

ValidationError and its subclasses mean the caller handed us something
outside the contract (bad matrix, wrong signature, point off the chart).
NumericalError means an internal computation failed to meet its residual
or convergence target. InvariantError means a mathematical invariant that
should hold for valid inputs was violated at runtime, which usually
signals a tolerance problem rather than a user mistake.
"""


class CoxlimError(Exception):
    """Base class for every error raised by coxlim."""


class ValidationError(CoxlimError):
    """Input rejected before any computation was attempted."""


class SignatureError(ValidationError):
    """Bilinear form does not have the required signature."""

    def __init__(self, message, signature=None):
        super().__init__(message)
        self.signature = signature


class ReducibleError(ValidationError):
    """Gram matrix is block diagonal up to permutation."""

    def __init__(self, message, blocks=None):
        super().__init__(message)
        self.blocks = blocks or []


class NumericalError(CoxlimError):
    """Iteration failed to converge or a residual target was missed."""


class InvariantError(CoxlimError):
    """A mathematical invariant was violated during computation."""


class EnumerationCapError(CoxlimError):
    """Breadth-first enumeration hit its memory cap.

    ``completed_levels`` counts the fully expanded levels; ``partial``
    carries whatever structure was built up to that point.
    """

    def __init__(self, message, completed_levels=0, partial=None):
        super().__init__(message)
        self.completed_levels = completed_levels
        self.partial = partial
