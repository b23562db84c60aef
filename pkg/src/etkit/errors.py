"""Exception types shared across the package."""


class EtkitError(Exception):
    """Base class for all package-specific errors."""


class NumericalDomainError(EtkitError):
    """A function evaluation produced a non-finite value."""


class AccuracyError(EtkitError):
    """A numerical routine could not reach the requested accuracy.

    Carries the best estimate obtained so far in ``best_estimate``.
    """

    def __init__(self, message, best_estimate=None):
        super().__init__(message)
        self.best_estimate = best_estimate


class SingularRegimeError(EtkitError):
    """The effective reorganization energy is non-positive.

    The Marcus-form barrier diverges there, so downstream formulas are
    undefined.
    """


class SurfaceTopologyError(EtkitError):
    """The lower adiabat does not have the expected well structure."""
