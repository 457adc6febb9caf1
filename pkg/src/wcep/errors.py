"""Exception hierarchy shared by the library and the command line front end."""


class WcepError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(WcepError, ValueError):
    """Bad input: wrong shapes, non-finite entries, infeasible parameters."""


class DimensionError(ValidationError):
    """Operands do not conform."""


class NumericalError(WcepError, ArithmeticError):
    """A numerical kernel failed or produced an inconsistent result."""


class ConvergenceError(NumericalError):
    """An iterative factorization (SVD) did not converge."""


class SingularMatrixError(NumericalError):
    """A matrix that must be invertible is numerically singular."""
