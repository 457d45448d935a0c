"""Exception hierarchy shared by the library and the CLI."""


class CatalanFormsError(Exception):
    """Base class for all library errors."""


class DomainError(CatalanFormsError, ValueError):
    """An argument lies outside the domain of the operation."""


class PreconditionError(DomainError):
    """An input violates a documented precondition (e.g. sigma-invariance)."""


class DivisibilityError(CatalanFormsError, ArithmeticError):
    """A polynomial division that was required to be exact left a remainder."""


class ConsistencyError(CatalanFormsError, RuntimeError):
    """An internal identity failed to hold.  Always indicates a bug."""


class AccuracyError(CatalanFormsError, RuntimeError):
    """A numerical routine could not reach the requested accuracy.

    ``estimate`` and ``error`` carry the best value obtained so far.
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
