"""
Classical GEMM/SYRK kernels, triangular additions and mirroring.

The array-level helpers operate on numpy views and are shared by the
recursive algorithms; the Matrix-level functions are the public API.
Every helper tallies the exact number of scalar operations it performs
into an optional :class:`OpCount`.
"""

from typing import Any, Optional

import numpy as np

from ..core.errors import DimensionMismatch
from ..core.interfaces import IField
from ..core.models import OpCount, tally
from .matrix import Matrix


def is_zero(x: Any) -> bool:
    return bool(x == 0)


def is_one(x: Any) -> bool:
    return bool(x == 1)


def transpose(field: IField, x: np.ndarray, conjugate: bool = False) -> np.ndarray:
    """Transpose view, or conjugate transpose copy when ``conjugate`` is set."""
    return field.conj(x.T) if conjugate else x.T


# Array-level helpers

def classical_product(field: IField, a: np.ndarray, b: np.ndarray,
                      counter: Optional[OpCount] = None) -> np.ndarray:
    """Plain product a·b: m·p·n multiplications and m·p·(n-1) additions."""
    m, n = a.shape
    p = b.shape[1]
    tally(counter, mults=m * p * n, adds=m * p * max(n - 1, 0), products=1)
    return field.matmul(a, b)


def combine(field: IField, alpha: Any, product: np.ndarray, beta: Any, c: np.ndarray,
            counter: Optional[OpCount] = None) -> np.ndarray:
    """c ← alpha·product + beta·c in place, counting only non-trivial scalings."""
    size = product.size
    if not is_one(alpha):
        product = field.mul(alpha, product)
        tally(counter, mults=size)
    if is_zero(beta):
        c[...] = product
        return c
    scaled = c
    if not is_one(beta):
        scaled = field.mul(beta, c)
        tally(counter, mults=size)
    field.add(product, scaled, out=c)
    tally(counter, adds=size)
    return c


def classical_syrk_lower(field: IField, a: np.ndarray, c: np.ndarray, alpha: Any = 1, beta: Any = 0,
                         counter: Optional[OpCount] = None, conjugate: bool = False) -> np.ndarray:
    """Low(c) ← alpha·a·aᵀ + beta·Low(c); the strict upper triangle is left alone.

    A plain n×k update counts n(n+1)/2·k multiplications and
    n(n+1)/2·(k-1) additions.
    """
    n, k = a.shape
    idx = np.tril_indices(n)
    half = n * (n + 1) // 2
    tally(counter, mults=half * k, adds=half * max(k - 1, 0), products=1)
    lower = field.matmul(a, transpose(field, a, conjugate))[idx]
    target = c[idx]
    combine(field, alpha, lower, beta, target, counter)
    c[idx] = target
    return c


def half_add(field: IField, c: np.ndarray, d: np.ndarray, counter: Optional[OpCount] = None) -> np.ndarray:
    """Low(c) ← Low(c) + Low(d): m(m+1)/2 additions."""
    m = c.shape[0]
    idx = np.tril_indices(m)
    c[idx] = field.add(c[idx], d[idx])
    tally(counter, adds=m * (m + 1) // 2)
    return c


def full_add(field: IField, c: np.ndarray, d: np.ndarray, counter: Optional[OpCount] = None) -> np.ndarray:
    """c ← c + d on every entry."""
    field.add(c, d, out=c)
    tally(counter, adds=c.size)
    return c


def mirror_lower(field: IField, c: np.ndarray, conjugate: bool = False) -> np.ndarray:
    """Up(c) ← Low(c)ᵀ (conjugated for Hermitian output); no arithmetic counted."""
    upper = np.triu_indices(c.shape[0], 1)
    values = c.T[upper]
    c[upper] = field.conj(values) if conjugate else values
    return c


# Matrix-level API

def _require(condition: bool, message: str) -> None:
    if not condition:
        raise DimensionMismatch(message)


def gemm_classical(alpha: Any, a: Matrix, b: Matrix, beta: Any, c: Matrix,
                   counter: Optional[OpCount] = None) -> Matrix:
    """C ← alpha·A·B + beta·C."""
    _require(a.cols == b.rows, f"Inner dimensions differ: {a.shape} by {b.shape}")
    _require(c.shape == (a.rows, b.cols), f"Output {c.shape} does not match {a.rows}×{b.cols}")
    product = classical_product(a.field, a.data, b.data, counter)
    combine(a.field, alpha, product, beta, c.data, counter)
    return c


def syrk_classical(alpha: Any, a: Matrix, beta: Any, c: Matrix,
                   counter: Optional[OpCount] = None) -> Matrix:
    """Low(C) ← alpha·A·Aᵀ + beta·Low(C); the upper triangle is untouched."""
    _require(c.shape == (a.rows, a.rows), f"Output {c.shape} must be {a.rows}×{a.rows}")
    classical_syrk_lower(a.field, a.data, c.data, alpha, beta, counter)
    return c


def mirror_lower_to_upper(c: Matrix) -> Matrix:
    """Make C exactly symmetric by copying its lower triangle upwards."""
    _require(c.is_square, f"Mirroring needs a square matrix, got {c.shape}")
    mirror_lower(c.field, c.data)
    return c


def add_lower(c1: Matrix, c2: Matrix, counter: Optional[OpCount] = None) -> Matrix:
    """Low(C1) ← Low(C1) + Low(C2) (half addition)."""
    _require(c1.shape == c2.shape and c1.is_square, f"Half addition needs equal square shapes, got {c1.shape} and {c2.shape}")
    half_add(c1.field, c1.data, c2.data, counter)
    return c1


def add_full(c1: Matrix, c2: Matrix, counter: Optional[OpCount] = None) -> Matrix:
    """C1 ← C1 + C2."""
    _require(c1.shape == c2.shape, f"Addition needs equal shapes, got {c1.shape} and {c2.shape}")
    full_add(c1.field, c1.data, c2.data, counter)
    return c1
