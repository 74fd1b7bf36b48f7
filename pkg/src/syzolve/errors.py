"""Exception hierarchy shared by all syzolve modules."""


class SyzolveError(Exception):
    """Base class for all syzolve errors."""


class SingularMatrixError(SyzolveError):
    """Raised when a matrix that must be invertible is (numerically) singular."""


class DegenerateSequenceError(SyzolveError):
    """Raised when the Euclidean remainder sequence skips the required degrees."""


class UnsupportedFieldError(SyzolveError):
    """Raised when an operation needs field features the current field lacks."""


class LeadingCoefficientError(SyzolveError):
    """Raised when a polynomial-matrix divisor has a singular leading/constant block."""


class NumericalBreakdownError(SyzolveError):
    """Raised when a float computation loses the structure an algorithm relies on."""
