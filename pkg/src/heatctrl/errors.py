"""Exception types shared across the package."""


class HeatctrlError(Exception):
    """Base class for package errors."""


class QuadratureError(HeatctrlError):
    """Raised when a quadrature error estimate cannot be driven below tolerance."""


class PreconditionError(HeatctrlError):
    """Raised when an operation is called outside its admissible parameter range."""
