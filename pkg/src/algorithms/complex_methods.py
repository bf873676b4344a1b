"""
Complex products from real ones: the 2M symmetric product and the 3M general product.
"""

from typing import Optional, Tuple

import numpy as np

from ..core.errors import DimensionMismatch, UnsupportedField
from ..core.models import OpCount, tally
from ..fields.complex_field import ComplexField
from ..matrix.matrix import Matrix


def _split(a: Matrix) -> Tuple[np.ndarray, np.ndarray]:
    if not isinstance(a.field, ComplexField):
        raise UnsupportedField(f"Complex methods need complex input, got {a.field.name}")
    return np.ascontiguousarray(a.data.real), np.ascontiguousarray(a.data.imag)


def _real_product(x: np.ndarray, y: np.ndarray, counter: Optional[OpCount]) -> np.ndarray:
    m, n = x.shape
    p = y.shape[1]
    tally(counter, mults=m * p * n, adds=m * p * max(n - 1, 0), products=1)
    return x @ y


def _real_sum(x: np.ndarray, y: np.ndarray, counter: Optional[OpCount], negate: bool = False) -> np.ndarray:
    tally(counter, adds=x.size)
    return x - y if negate else x + y


def syrk_2m_complex(a: Matrix, counter: Optional[OpCount] = None) -> Matrix:
    """
    (A_re + i·A_im)·(A_re + i·A_im)ᵀ with two real matrix products.

    H = A_re·A_imᵀ and G = (A_re + A_im)·(A_re - A_im)ᵀ give
    real part G - Hᵀ + H and imaginary part H + Hᵀ.
    """
    re, im = _split(a)
    h = _real_product(re, im.T, counter)
    g = _real_product(_real_sum(re, im, counter), _real_sum(re, im, counter, negate=True).T, counter)
    real = _real_sum(_real_sum(g, h.T, counter, negate=True), h, counter)
    imag = _real_sum(h, h.T, counter)
    return Matrix(a.field, real + 1j * imag)


def gemm_3m_complex(a: Matrix, b: Matrix, counter: Optional[OpCount] = None) -> Matrix:
    """
    Karatsuba-style complex product with three real matrix products.

    For A = A_re + i·A_im and B = B_re + i·B_im: T1 = A_re·B_re,
    T2 = A_im·B_im, T3 = (A_re + A_im)·(B_re + B_im); the product is
    (T1 - T2) + i·(T3 - T1 - T2).

    Raises:
        DimensionMismatch: If the inner dimensions differ
    """
    if a.cols != b.rows:
        raise DimensionMismatch(f"Inner dimensions differ: {a.shape} by {b.shape}")
    a_re, a_im = _split(a)
    b_re, b_im = _split(b)
    t1 = _real_product(a_re, b_re, counter)
    t2 = _real_product(a_im, b_im, counter)
    t3 = _real_product(_real_sum(a_re, a_im, counter), _real_sum(b_re, b_im, counter), counter)
    real = _real_sum(t1, t2, counter, negate=True)
    imag = _real_sum(_real_sum(t3, t1, counter, negate=True), t2, counter, negate=True)
    return Matrix(a.field, real + 1j * imag)
