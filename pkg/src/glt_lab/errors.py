"""Exception types shared across the package."""


class GltLabError(Exception):
    """Base class for all errors raised by glt_lab."""


class ExprSyntaxError(GltLabError):
    """Malformed expression source; carries the character position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class VariableError(GltLabError):
    """An expression uses a variable not allowed for its role."""


class DomainError(GltLabError):
    """A precondition on sizes, degrees, resolutions or domains is violated."""


class EvalError(GltLabError):
    """An expression is non-finite at a point where a finite value is required."""


class UnknownNameError(GltLabError):
    """A name is not in the registry it was looked up in."""


class NumericalError(GltLabError):
    """A matrix decomposition failed to converge."""


class HermitianError(GltLabError):
    """A matrix required to be Hermitian is not."""


class ConfigError(GltLabError):
    """An experiment configuration is invalid."""
