"""Exception types shared across the package."""


class LengthMismatchError(ValueError):
    """Operands live on chains of different lengths."""


class DomainError(ValueError):
    """Input is structurally valid but outside the operation's domain."""


class ResourceLimitError(RuntimeError):
    """Requested problem size exceeds the configured cap."""


class ConvergenceError(RuntimeError):
    """Iterative eigensolver failed to reach the residual contract.

    Carries the offending residuals so callers can report them.
    """

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals
