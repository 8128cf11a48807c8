"""Exception types shared across the package."""


class ConfigError(ValueError):
    """A scenario configuration or precondition is invalid."""


class TableRangeError(ValueError):
    """A tabulated quantity was evaluated outside its domain."""


class NumericsError(RuntimeError):
    """A numerical stage failed to meet its accuracy or stability contract."""


class QuadratureError(NumericsError):
    """Adaptive quadrature did not converge within the panel budget.

    Carries the achieved absolute-error estimate so callers can decide
    whether the partial result is usable.
    """

    def __init__(self, message, estimate=None, value=None):
        super().__init__(message)
        self.estimate = estimate
        self.value = value
