"""
Exceptions raised by the `cubic_beta` package.

Every error derives from :class:`CubicBetaError`. Errors about bad values also
derive from `ValueError` and numerical failures from `RuntimeError`, so callers
can catch either.
"""


class CubicBetaError(Exception):
    """Base class of every error raised by the package."""


class DomainError(CubicBetaError, ValueError):
    """An argument lies outside the mathematical domain of the operation
    (e.g. ``x`` outside ``[0, 1]`` or a nonpositive shape parameter)."""


class InvalidParams(CubicBetaError, ValueError):
    """A parameter set violates the invariants of its family."""


class InvalidCoeffs(InvalidParams):
    """Transform coefficients ``(a, b, c)`` outside the monotone region."""


class NonConvergence(CubicBetaError, RuntimeError):
    """An iterative solver ran out of iterations.

    Args:
        message (str): Human readable description.

        best (object, optional): Best value found before giving up.

        iterations (int, optional): Number of iterations performed.
    """
    def __init__(self, message, best=None, iterations=None):
        super().__init__(message)
        self.best = best
        self.iterations = iterations


class ToleranceNotMet(CubicBetaError, RuntimeError):
    """The quadrature oracle exhausted its subdivision budget."""
    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class NoSolution(CubicBetaError, ValueError):
    """A regression inversion has no solution for the requested target."""


class NegativeStatistic(CubicBetaError, ValueError):
    """A likelihood-ratio statistic came out negative beyond optimizer slack,
    which means the parent fit did not reach the nested optimum."""


class DataError(CubicBetaError, ValueError):
    """Base class for problems with input data."""


class ParseError(DataError):
    """A data cell could not be read as a number.

    Args:
        message (str): Human readable description.

        line (int): 1-based line number in the input file.
    """
    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line


class BoundaryValueError(DataError):
    """Observations fall on (or outside) the ends of the data interval.

    Args:
        message (str): Human readable description.

        rows (list[int]): 0-based positions of the offending observations.
    """
    def __init__(self, message, rows=()):
        super().__init__(message)
        self.rows = list(rows)


class UsageError(CubicBetaError, ValueError):
    """Command line arguments that cannot be run."""
