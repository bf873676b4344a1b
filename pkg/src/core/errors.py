"""
Exception hierarchy shared by every package module.
"""


class FastSyrkError(Exception):
    """Base class for all library errors."""


class FieldError(FastSyrkError, ValueError):
    """Invalid field parameters or an operation undefined for the element."""


class NonResidue(FieldError):
    """Raised when a square root is requested for a non-square."""


class NotNonResidue(FieldError):
    """Raised when a quadratic non-residue was required but not supplied."""


class DimensionParity(FastSyrkError, ValueError):
    """Raised when a pair-form skew-orthogonal matrix gets an odd dimension."""


class DimensionMismatch(FastSyrkError, ValueError):
    """Raised when operand shapes do not agree."""


class UnsupportedField(FastSyrkError, TypeError):
    """Raised when an operation is not defined over the given field."""


class AliasingError(FastSyrkError, ValueError):
    """Raised when an output buffer shares memory with an input."""


class MalformedScaling(FastSyrkError, ValueError):
    """Raised for invalid diagonal or block-diagonal scalings."""


class MatrixFormatError(FastSyrkError, ValueError):
    """Raised when matrix text cannot be parsed."""


class InvalidModel(FastSyrkError, ValueError):
    """Raised for a size and recursion depth the count model does not cover."""
