"""Exception types shared across the package."""


class FuncordError(Exception):
    """Base class for all library errors."""


class AlgebraMismatchError(FuncordError):
    """Operands belong to different algebras."""


class ConstructionError(FuncordError):
    """Invalid parameters or structure data for an algebra constructor."""


class NotRepresentableError(FuncordError):
    """A functional fails one of the representability conditions."""

    def __init__(self, message, failed_condition=None):
        super().__init__(message)
        self.failed_condition = failed_condition


class VerificationFailedError(FuncordError):
    """An internal reconstruction check exceeded its tolerance."""


class NoConvergenceError(FuncordError):
    """The doubling iteration hit its cap before reaching the tolerance."""


class InvalidDecompositionError(FuncordError):
    """A computed decomposition violates positivity beyond tolerance."""


class NotDominatedError(FuncordError):
    """No finite constant c with f <= c*g exists (range inclusion fails)."""


class OrderViolationError(FuncordError):
    """An order-interval precondition (lo <= h <= hi) does not hold."""


class ToleranceConflictError(FuncordError):
    """Two tests that must agree disagree beyond the hysteresis band."""


class CrossCheckFailedError(FuncordError):
    """Two independent computation routes disagree beyond tolerance."""


class NotMatrixAlgebraError(FuncordError):
    """Trace duality requires a full matrix algebra."""


class ConfigError(FuncordError):
    """Command-line configuration problem."""


class UnknownCommandError(ConfigError):
    """The requested command does not exist."""


class MissingInputError(ConfigError):
    """A required input flag was not supplied."""


class BadToleranceError(ConfigError):
    """The tolerance flag is not a positive number."""
