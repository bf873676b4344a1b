"""
Field construction from command-line style descriptors.
"""

from typing import Union

from ..core.errors import FieldError
from ..core.interfaces import IField
from ..core.models import FieldKind
from .binary_field import BinaryField
from .complex_field import ComplexField
from .prime_field import PrimeField
from .quad_ext_field import QuadExtField


def make_field(kind: Union[FieldKind, str] = FieldKind.PRIME, prime: int = 131071, k: int = 1) -> IField:
    """
    Build a field descriptor.

    Args:
        kind: fp, fp2, gf2k or complex
        prime: Modulus for fp and fp2
        k: Extension degree for gf2k

    Raises:
        FieldError: On invalid parameters
    """
    try:
        kind = FieldKind(kind)
    except ValueError:
        raise FieldError(f"Unknown field kind '{kind}'")

    if kind is FieldKind.PRIME:
        return PrimeField(prime)
    if kind is FieldKind.QUAD_EXT:
        return QuadExtField(prime)
    if kind is FieldKind.BINARY:
        return BinaryField(k)
    return ComplexField()
