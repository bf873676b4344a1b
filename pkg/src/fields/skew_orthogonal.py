"""
Skew-orthogonal (Y·Yᵀ = -I) and skew-unitary (Y·conj(Y)ᵀ = -I) matrices.
"""

import logging
from dataclasses import dataclass, replace
from typing import Any, Optional, Union

import numpy as np

from ..core.errors import DimensionMismatch, DimensionParity, UnsupportedField
from ..core.interfaces import IField
from ..core.models import OpCount, tally
from ..matrix.matrix import Matrix
from .complex_field import ComplexField
from .prime_field import PrimeField
from .quad_ext_field import QuadExtField
from .sum_of_squares import sos

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScalarRoot:
    """Y = i·I with i^2 = -1 (or i·conj(i) = -1 for the unitary variant)."""
    root: Any


@dataclass(frozen=True)
class Pair:
    """Y = [[a·I, b·I], [-b·I, a·I]] with a^2 + b^2 = -1."""
    a: Any
    b: Any


SkewForm = Union[ScalarRoot, Pair]


@dataclass(frozen=True)
class SkewOrthogonal:
    """Compact description of a skew-orthogonal matrix of size dim×dim.

    ``ycost`` is the number of scalar operations per matrix entry that
    applying Y from the right costs: 0, 1, 2 or 3.
    """
    field: IField
    form: SkewForm
    dim: int
    ycost: int

    def __post_init__(self):
        if isinstance(self.form, Pair) and self.dim % 2:
            raise DimensionParity(f"Pair-form skew-orthogonal matrix needs an even dimension, got {self.dim}")

    @property
    def is_pair(self) -> bool:
        return isinstance(self.form, Pair)

    def with_dim(self, dim: int) -> 'SkewOrthogonal':
        """Same form at another dimension."""
        return self if dim == self.dim else replace(self, dim=dim)

    def to_matrix(self) -> Matrix:
        """Dense dim×dim materialization."""
        field = self.field
        y = field.zeros((self.dim, self.dim))
        if isinstance(self.form, ScalarRoot):
            np.fill_diagonal(y, self.form.root)
            return Matrix(field, y)
        t = self.dim // 2
        diagonal = np.arange(t)
        y[diagonal, diagonal] = self.form.a
        y[diagonal + t, diagonal + t] = self.form.a
        y[diagonal, diagonal + t] = self.form.b
        y[diagonal + t, diagonal] = field.neg(self.form.b)
        return Matrix(field, y)


def skew_orthogonal(field: IField, dim: int) -> SkewOrthogonal:
    """
    Construct a skew-orthogonal matrix for the field.

    Complex: i (free to apply). Characteristic 2: the identity, since
    1 = -1. p ≡ 1 mod 4 and F_{p^2}: a square root of -1. p ≡ 3 mod 8:
    the pair (1, sqrt(-2)). p ≡ 7 mod 8: the pair sos(-1).

    Raises:
        DimensionParity: If a pair form is required and dim is odd
        UnsupportedField: For fields outside the cases above
    """
    if isinstance(field, ComplexField):
        return SkewOrthogonal(field, ScalarRoot(1j), dim, 0)
    if field.characteristic == 2:
        return SkewOrthogonal(field, ScalarRoot(field.one), dim, 0)
    if isinstance(field, QuadExtField):
        return SkewOrthogonal(field, ScalarRoot(field.sqrt(field.minus_one)), dim, 1)
    if not isinstance(field, PrimeField):
        raise UnsupportedField(f"No skew-orthogonal construction for {field.name}")

    p = field.p
    if p % 4 == 1:
        return SkewOrthogonal(field, ScalarRoot(field.sqrt(p - 1)), dim, 1)
    if p % 8 == 3:
        return SkewOrthogonal(field, Pair(1, field.sqrt(p - 2)), dim, 2)
    a, b = sos(field, p - 1)
    return SkewOrthogonal(field, Pair(a, b), dim, 3)


def skew_unitary(field: IField, dim: int) -> SkewOrthogonal:
    """
    Scalar Y = z·I over F_{p^2} with z·conj(z) = -1.

    When -1 is a square mod p its base-field root works directly. Otherwise
    i = t·x with t^2 = -1/ns is a root of -1 whose conjugate is -i, and
    z = a + i·b with (a, b) = sos(F_p, -1) has norm a^2 + b^2 = -1.
    """
    if not isinstance(field, QuadExtField):
        raise UnsupportedField(f"Skew-unitary matrices need an even extension field, got {field.name}")
    base = field.base
    p = base.p
    if base.legendre(p - 1) == 1:
        return SkewOrthogonal(field, ScalarRoot(field.element(base.sqrt(p - 1), 0)), dim, 1)

    a, b = sos(base, p - 1)
    t = base.sqrt((p - 1) * base.inv(field.ns) % p)
    z = field.element(a, b * t)
    logger.debug(f"Skew-unitary root for {field.name}: {a} + {b * t % p}·x")
    return SkewOrthogonal(field, ScalarRoot(z), dim, 1)


def apply_skew(field: IField, skew: SkewOrthogonal, src: np.ndarray, out: np.ndarray,
               counter: Optional[OpCount] = None) -> np.ndarray:
    """out ← src·Y; ``out`` may alias ``src``.

    Counted cost is ``skew.ycost`` operations per entry.
    """
    size = src.size
    form = skew.form
    if isinstance(form, ScalarRoot):
        if skew.ycost == 0:
            # identity in characteristic 2; a swap and sign flip over C
            if form.root != 1:
                out[...] = src * form.root
            elif out is not src:
                out[...] = src
            return out
        field.mul(src, form.root, out=out)
        tally(counter, mults=size)
        return out

    t = src.shape[1] // 2
    first, second = src[:, :t], src[:, t:]
    if form.a == 1:
        left = field.sub(first, field.mul(form.b, second))
        right = field.add(field.mul(form.b, first), second)
        tally(counter, mults=size, adds=size)
    else:
        left = field.sub(field.mul(form.a, first), field.mul(form.b, second))
        right = field.add(field.mul(form.b, first), field.mul(form.a, second))
        tally(counter, mults=2 * size, adds=size)
    out[:, :t] = left
    out[:, t:] = right
    return out


def apply_skeworth_right(a: Matrix, skew: SkewOrthogonal, counter: Optional[OpCount] = None) -> Matrix:
    """
    Return A·Y.

    Raises:
        DimensionMismatch: If Y's dimension differs from A's column count
    """
    if skew.dim != a.cols:
        raise DimensionMismatch(f"Y has dimension {skew.dim} but A has {a.cols} columns")
    out = a.field.zeros(a.shape)
    apply_skew(a.field, skew, a.data, out, counter)
    return Matrix(a.field, out)
