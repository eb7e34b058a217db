"""Exception types shared across the package."""


class NumericalInstabilityError(RuntimeError):
    """Raised when a numerical invariant (norm conservation, eigensolver
    residual) is violated beyond its tolerance."""
