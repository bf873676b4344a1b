"""
Divide-and-conquer symmetric product: four recursive SYRKs and two general products per level.
"""

import logging
from typing import Optional

import numpy as np

from ..core.interfaces import IField
from ..core.models import OpCount, RecursionPolicy
from ..matrix.kernels import classical_syrk_lower, full_add, half_add, mirror_lower
from ..matrix.matrix import Matrix
from ..matrix.workspace import Workspace
from .winograd import winograd_into

logger = logging.getLogger(__name__)


def syrk_dc_into(field: IField, a: np.ndarray, c: np.ndarray, policy: RecursionPolicy, budget: Optional[int],
                 counter: Optional[OpCount] = None, workspace: Optional[Workspace] = None) -> np.ndarray:
    """Low(c) ← a·aᵀ, using the C12 block as the only temporary."""
    n, k = a.shape
    if not policy.allows(budget, n, k) or n % 2 or k % 2:
        return classical_syrk_lower(field, a, c, counter=counter)

    m, k2 = n // 2, k // 2
    a11, a12, a21, a22 = a[:m, :k2], a[:m, k2:], a[m:, :k2], a[m:, k2:]
    c11, c12, c21, c22 = c[:m, :m], c[:m, m:], c[m:, :m], c[m:, m:]
    child = policy.descend(budget)

    syrk_dc_into(field, a11, c11, policy, child, counter, workspace)
    syrk_dc_into(field, a12, c12, policy, child, counter, workspace)
    half_add(field, c11, c12, counter)                 # C11 = A11·A11ᵀ + A12·A12ᵀ
    winograd_into(field, a21, a11.T, c21, policy, child, counter, workspace)
    winograd_into(field, a22, a12.T, c12, policy, child, counter, workspace)
    full_add(field, c21, c12, counter)                 # C21 = A21·A11ᵀ + A22·A12ᵀ
    syrk_dc_into(field, a21, c22, policy, child, counter, workspace)
    syrk_dc_into(field, a22, c12, policy, child, counter, workspace)
    half_add(field, c22, c12, counter)                 # C22 = A21·A21ᵀ + A22·A22ᵀ
    return c


def syrk_dc(a: Matrix, policy: Optional[RecursionPolicy] = None, counter: Optional[OpCount] = None,
            workspace: Optional[Workspace] = None, mirror_output: bool = False) -> Matrix:
    """
    Lower triangle of A·Aᵀ by block divide and conquer.

    The baseline against which the five-product algorithm is compared;
    the off-diagonal block uses Strassen–Winograd.
    """
    policy = policy or RecursionPolicy()
    c = a.field.zeros((a.rows, a.rows))
    syrk_dc_into(a.field, a.data, c, policy, policy.initial_budget(), counter, workspace)
    if mirror_output:
        mirror_lower(a.field, c)
    return Matrix(a.field, c)
