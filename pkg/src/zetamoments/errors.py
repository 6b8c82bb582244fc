class ZetaMomentsError(Exception):
    """Base class for errors raised by this package."""


class DomainError(ZetaMomentsError, ValueError):
    """Argument outside the domain where an evaluator is valid."""


class PoleError(DomainError):
    pass


class ParameterError(ZetaMomentsError, ValueError):
    """Inconsistent or out-of-range parameters (table too small, x > T^2, ...)."""


class CapacityError(ParameterError):
    pass


class BudgetError(ParameterError):
    pass


class HypothesisError(ParameterError):
    """A lemma's hypothesis is violated by the requested parameters."""


class CoverageError(ZetaMomentsError, ValueError):
    """A zero table does not extend far enough beyond the evaluation point."""


class ZeroTableError(ZetaMomentsError, ValueError):
    """Malformed zero file.  ``lineno`` is 1-based, or None for whole-file problems."""

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class ConvergenceError(ZetaMomentsError, ArithmeticError):
    pass
