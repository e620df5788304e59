"""Exception hierarchy.

Every error raised for a violated precondition derives from
:class:`DomainError`, which is itself a :class:`ValueError`, so callers that
only care about "bad input" can catch ``ValueError``.
"""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class UnsupportedMethodError(DomainError):
    """The requested method or model is not available for these arguments."""


class AnalyticityError(DomainError):
    """The contour is not inside the region where the function is analytic."""


class BranchError(DomainError):
    """The Joukowski root has modulus one (the point lies on [-1, 1])."""


class PreconditionError(DomainError):
    """A bound was requested outside the parameter range where it holds."""
