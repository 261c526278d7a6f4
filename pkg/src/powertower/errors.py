"""Exception types raised by the library."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class PreconditionError(ValueError):
    """The caller broke a documented precondition (e.g. passed a non fixed point)."""


class ConvergenceError(ArithmeticError):
    """An iterative procedure failed to settle within its budget."""
