"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Invalid problem setup: bad function description, mismatched sample
    nodes, or an out-of-range solver parameter."""


class NumericalError(RuntimeError):
    """A numerical routine could not produce a trustworthy result."""


class SolverError(NumericalError):
    """Linear solve failed. Carries a condition estimate when available."""

    def __init__(self, message: str, cond: float | None = None):
        if cond is not None:
            message = f"{message} (condition estimate {cond:.3e})"
        super().__init__(message)
        self.cond = cond
