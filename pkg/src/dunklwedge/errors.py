"""Exception hierarchy shared by the numerical modules and the CLI."""


class DunklWedgeError(Exception):
    """Base class for all package errors."""


class DomainError(DunklWedgeError, ValueError):
    """A parameter lies outside the mathematical domain of an operation."""


class NonConvergenceError(DunklWedgeError, ArithmeticError):
    """A series or iteration hit its term cap before the stopping rule fired.

    ``partial`` carries the last partial sum, ``terms`` the number of terms
    evaluated and ``last_term`` the magnitude of the final increment.
    """

    def __init__(self, message, partial=None, terms=None, last_term=None):
        super().__init__(message)
        self.partial = partial
        self.terms = terms
        self.last_term = last_term


class QuadratureError(DunklWedgeError, ArithmeticError):
    """Node doubling did not reach the requested tolerance."""

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class ConfigError(DunklWedgeError, ValueError):
    """Invalid simulation or CLI configuration."""


class LiftingError(DunklWedgeError, RuntimeError):
    """Continuous lifting of the winding angle could not be guaranteed."""
