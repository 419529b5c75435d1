"""Exception hierarchy shared by all modules."""


class SJSlabError(Exception):
    """Base class for errors raised by :mod:`sjslab`."""


class InvalidParameterError(SJSlabError, ValueError):
    """A scalar parameter is outside its admissible range."""


class ValidationError(SJSlabError, ValueError):
    """User supplied data (e.g. a custom spectrum) fails validation."""


class DomainError(SJSlabError, ValueError):
    """A time argument or test-function support lies outside the slab."""


class NearZeroOverlapError(SJSlabError, ValueError):
    """The cosine overlap of a test function with a mode is numerically zero."""


class DegenerateCaseError(SJSlabError, ValueError):
    """The requested asymptotic formula is degenerate for these parameters."""


class AccuracyError(SJSlabError, ArithmeticError):
    """Quadrature did not converge within the node budget.

    Attributes
    ----------
    estimates : tuple of float
        The last two quadrature estimates.
    """

    def __init__(self, message, estimates=()):
        super().__init__(message)
        self.estimates = tuple(estimates)
