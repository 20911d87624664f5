"""Exception hierarchy shared by the library and the command line driver."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of a function."""


class ContractError(ValueError):
    """Two inputs that must agree (bin schemes, shared shape/location) do not."""


class ValidationError(ValueError):
    """Input data violates a data invariant (negative runs, ties, ...)."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ParseError(ValidationError):
    """A row of input could not be parsed at all."""


class EvaluationError(ArithmeticError):
    """A statistic could not be evaluated (e.g. zero expected count)."""


class ConvergenceError(ArithmeticError):
    """An iterative numerical routine did not converge."""


class FitError(RuntimeError):
    """No optimizer start converged. ``best`` carries the incumbent result."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
