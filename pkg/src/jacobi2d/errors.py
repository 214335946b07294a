"""Exception types raised by jacobi2d."""


class JacobiError(Exception):
    """Base class for all jacobi2d errors."""


class ValidationError(JacobiError):
    """Coefficient data failed validation."""


class PeriodTooSmall(ValidationError):
    pass


class ShapeMismatch(ValidationError):
    pass


class NonRealDiagonal(ValidationError):
    pass


class NonFinite(ValidationError):
    pass


class IndexOutOfRange(JacobiError):
    pass


class NotHermitian(JacobiError):
    pass


class NotDiagonalHopping(JacobiError):
    """The Schrodinger-case bound needs a0 to vanish identically."""


class DimensionMismatch(JacobiError):
    pass


class DimensionCap(JacobiError):
    """A torus operator would exceed the configured dense-matrix size."""
