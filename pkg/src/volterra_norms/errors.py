"""Exception types raised by the solvers."""


class VolterraError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(VolterraError, ValueError):
    """An argument lies outside the domain of the operation."""


class NoSignChange(VolterraError):
    """The bracket endpoints do not straddle a root."""


class NonFinite(VolterraError, ArithmeticError):
    """The function returned a NaN or an infinity."""


class Diverged(VolterraError):
    """Newton iteration left its guard interval or ran out of iterations."""

    def __init__(self, message, last=None):
        super().__init__(message)
        self.last = last


class NoConvergence(VolterraError):
    """An iterative eigenvalue computation hit its iteration cap."""

    def __init__(self, message, last=None):
        super().__init__(message)
        self.last = last
