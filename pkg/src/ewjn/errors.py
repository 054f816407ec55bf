"""Shared exception types.

The CLI maps these onto distinct exit codes, so every physics module
raises through this vocabulary rather than bare ValueError/RuntimeError.
"""


class DomainError(ValueError):
    """A physical precondition was violated (z <= 0, omega <= 0, ...)."""


class QuadratureError(RuntimeError):
    """An integral failed to converge.

    Carries the best available estimate and its error bound so callers
    can report partial results instead of losing the computation.
    """

    def __init__(self, message, best_estimate=None, error_bound=None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_bound = error_bound
