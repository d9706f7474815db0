"""Exception types shared across the package."""


class ModelValidityError(ValueError):
    """A physical-parameter validity bound is violated."""


class ConfigError(ValueError):
    """Scenario configuration is malformed; carries the offending field path."""

    def __init__(self, message: str, field: str | None = None):
        self.field = field
        if field is not None:
            message = f"{field}: {message}"
        super().__init__(message)


class SolverError(RuntimeError):
    """A linear solve failed or produced an invalid result."""

    def __init__(self, message: str, condition_number: float | None = None):
        if condition_number is not None:
            message = f"{message} (condition number ~ {condition_number:.3e})"
        self.condition_number = condition_number
        super().__init__(message)


class SteadyStateError(SolverError):
    """No unique stationary state (kappa_tot = 0 or degenerate null space)."""

    def __init__(self, message: str, null_dimension: int | None = None):
        self.null_dimension = null_dimension
        super().__init__(message)


class StepSizeError(ValueError):
    """Time step violates the integrator stability guard."""
