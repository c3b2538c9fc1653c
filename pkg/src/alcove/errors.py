"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: InvalidInput -> 2, VerificationFailure -> 1.
"""

from fractions import Fraction


class AlcoveError(Exception):
    pass


class InvalidInput(AlcoveError, ValueError):
    """Arguments outside an operation's domain (bad type/rank, weight on a wall, ...)."""


class EmptyRegion(InvalidInput):
    pass


class BoundExceeded(InvalidInput):
    """A length bound of the Coxeter engine was exceeded."""


class InexactDivision(AlcoveError, ArithmeticError):
    """A dimension formula did not evaluate to an integer."""

    def __init__(self, value: Fraction, message: str = ""):
        self.value = value
        super().__init__(message or f"evaluation is not an integer: {value}")


class VerificationFailure(AlcoveError):
    """Two computation paths that must agree did not."""
