"""Exception types shared across the package."""


class RingMismatchError(TypeError):
    """Raised when rational and big-float coefficients meet in one operation."""


class UndeterminedCoefficientError(ValueError):
    """Raised when a result needs coefficients hidden by truncation."""


class DegenerateParameterError(ValueError):
    """Raised when a recursion determinant vanishes for the requested (n, j, nu)."""
