"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class DivergenceError(ValueError):
    """The requested quantity is a genuine pole / divergent limit."""


class PreconditionError(ValueError):
    """A structural precondition (e.g. a cutoff schedule premise) is violated."""


class ConvergenceError(RuntimeError):
    """A numerical scheme failed to converge within its budget."""


class UnsupportedOrderError(ValueError):
    """Requested expansion order is outside the implemented range."""
