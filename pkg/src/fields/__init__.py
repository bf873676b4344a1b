"""
Scalar arithmetic: prime, binary, quadratic extension and complex fields,
residues, sums of squares and skew-orthogonal matrices.
"""

from .prime_field import PrimeField, is_prime, legendre, sqrt_mod, lqnr
from .binary_field import BinaryField
from .quad_ext_field import QuadExtField
from .complex_field import ComplexField
from .sum_of_squares import sos, nrsyf
from .skew_orthogonal import (
    SkewOrthogonal,
    ScalarRoot,
    Pair,
    skew_orthogonal,
    skew_unitary,
    apply_skeworth_right
)
from .factory import make_field
