"""Exception types shared across the library."""


class ParameterError(ValueError):
    """Invalid, degenerate, or mutually inconsistent parameters."""


class SingularMatrixError(ArithmeticError):
    """The matrix has no inverse over its coefficient ring."""


class NotApplicableError(RuntimeError):
    """The requested procedure does not apply to the given platform."""


class SizeCapError(RuntimeError):
    """The problem instance exceeds the configured enumeration cap."""
