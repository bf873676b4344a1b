"""
Strassen–Winograd matrix product, plain and accumulating, with dynamic peeling
of odd dimensions.
"""

import logging
from typing import Any, Optional

import numpy as np

from ..core.errors import DimensionMismatch
from ..core.interfaces import IField
from ..core.models import OpCount, RecursionPolicy, tally
from ..matrix.kernels import classical_product, combine, full_add, is_one, is_zero
from ..matrix.matrix import Matrix
from ..matrix.workspace import WINOGRAD_SCRATCH, Workspace, allocate

logger = logging.getLogger(__name__)


def _sub(field: IField, x: np.ndarray, y: np.ndarray, out: np.ndarray, counter: Optional[OpCount]) -> None:
    field.sub(x, y, out=out)
    tally(counter, adds=out.size)


def _add(field: IField, x: np.ndarray, y: np.ndarray, out: np.ndarray, counter: Optional[OpCount]) -> None:
    field.add(x, y, out=out)
    tally(counter, adds=out.size)


def winograd_into(field: IField, a: np.ndarray, b: np.ndarray, out: np.ndarray, policy: RecursionPolicy,
                  budget: Optional[int], counter: Optional[OpCount] = None,
                  workspace: Optional[Workspace] = None) -> np.ndarray:
    """out ← a·b, recursing while ``policy`` allows and the level budget lasts.

    ``out`` must not overlap ``a`` or ``b``.
    """
    m, n = a.shape
    p = b.shape[1]
    if not policy.allows(budget, m, n, p):
        out[...] = classical_product(field, a, b, counter)
        return out
    if m % 2 or n % 2 or p % 2:
        return _peeled_product(field, a, b, out, policy, budget, counter, workspace)
    return _winograd_level(field, a, b, out, policy, budget, counter, workspace)


def winograd_acc_into(field: IField, alpha: Any, a: np.ndarray, b: np.ndarray, beta: Any, c: np.ndarray,
                      policy: RecursionPolicy, budget: Optional[int], counter: Optional[OpCount] = None,
                      workspace: Optional[Workspace] = None) -> np.ndarray:
    """c ← alpha·a·b + beta·c in place.

    Each level scales c by beta once and then accumulates the seven
    products straight into its blocks; ``c`` must not overlap ``a`` or ``b``.
    """
    m, n = a.shape
    p = b.shape[1]
    if not policy.allows(budget, m, n, p):
        return combine(field, alpha, classical_product(field, a, b, counter), beta, c, counter)
    if m % 2 or n % 2 or p % 2:
        return _peeled_acc(field, alpha, a, b, beta, c, policy, budget, counter, workspace)
    _scale_output(field, beta, c, counter)
    return _winograd_acc_level(field, alpha, a, b, c, policy, budget, counter, workspace)


def _scale_output(field: IField, beta: Any, c: np.ndarray, counter: Optional[OpCount]) -> None:
    if is_zero(beta):
        c[...] = field.zero
    elif not is_one(beta):
        field.mul(beta, c, out=c)
        tally(counter, mults=c.size)


def _peeled_product(field: IField, a: np.ndarray, b: np.ndarray, out: np.ndarray, policy: RecursionPolicy,
                    budget: Optional[int], counter: Optional[OpCount],
                    workspace: Optional[Workspace]) -> np.ndarray:
    """Recurse on the even core; the odd rim is handled with classical updates."""
    m, n = a.shape
    p = b.shape[1]
    me, ne, pe = m - m % 2, n - n % 2, p - p % 2
    logger.debug(f"Peeling {m}×{n}·{n}×{p} to core {me}×{ne}·{ne}×{pe}")

    core = out[:me, :pe]
    winograd_into(field, a[:me, :ne], b[:ne, :pe], core, policy, budget, counter, workspace)
    if n != ne:
        # rank-1 update with the last column of a and last row of b
        update = classical_product(field, a[:me, ne:], b[ne:, :pe], counter)
        full_add(field, core, update, counter)
    if m != me:
        out[me:, :] = classical_product(field, a[me:, :], b, counter)
    if p != pe:
        out[:me, pe:] = classical_product(field, a[:me, :], b[:, pe:], counter)
    return out


def _peeled_acc(field: IField, alpha: Any, a: np.ndarray, b: np.ndarray, beta: Any, c: np.ndarray,
                policy: RecursionPolicy, budget: Optional[int], counter: Optional[OpCount],
                workspace: Optional[Workspace]) -> np.ndarray:
    """Accumulating counterpart of :func:`_peeled_product`."""
    m, n = a.shape
    p = b.shape[1]
    me, ne, pe = m - m % 2, n - n % 2, p - p % 2
    logger.debug(f"Peeling accumulation {m}×{n}·{n}×{p} to core {me}×{ne}·{ne}×{pe}")

    core = c[:me, :pe]
    winograd_acc_into(field, alpha, a[:me, :ne], b[:ne, :pe], beta, core, policy, budget, counter, workspace)
    if n != ne:
        combine(field, alpha, classical_product(field, a[:me, ne:], b[ne:, :pe], counter), 1, core, counter)
    if m != me:
        combine(field, alpha, classical_product(field, a[me:, :], b, counter), beta, c[me:, :], counter)
    if p != pe:
        combine(field, alpha, classical_product(field, a[:me, :], b[:, pe:], counter), beta, c[:me, pe:], counter)
    return c


def _winograd_level(field: IField, a: np.ndarray, b: np.ndarray, out: np.ndarray, policy: RecursionPolicy,
                    budget: Optional[int], counter: Optional[OpCount],
                    workspace: Optional[Workspace]) -> np.ndarray:
    """One recursion level: 8 pre-additions, 7 products, 7 post-additions.

    Two scratch buffers are used: X holds s1..s4 and then p1, Y holds
    t1..t4. The products p2..p7 are placed directly in the output blocks.
    """
    m, n = a.shape
    p = b.shape[1]
    m2, n2, p2 = m // 2, n // 2, p // 2
    a11, a12, a21, a22 = a[:m2, :n2], a[:m2, n2:], a[m2:, :n2], a[m2:, n2:]
    b11, b12, b21, b22 = b[:n2, :p2], b[:n2, p2:], b[n2:, :p2], b[n2:, p2:]
    c11, c12, c21, c22 = out[:m2, :p2], out[:m2, p2:], out[m2:, :p2], out[m2:, p2:]

    x = allocate(workspace, field, (m2, max(n2, p2)), WINOGRAD_SCRATCH)
    y = allocate(workspace, field, (n2, p2), WINOGRAD_SCRATCH)
    xs, xp = x[:, :n2], x[:, :p2]
    child = policy.descend(budget)

    def product(lhs: np.ndarray, rhs: np.ndarray, dest: np.ndarray) -> None:
        winograd_into(field, lhs, rhs, dest, policy, child, counter, workspace)

    _sub(field, a11, a21, xs, counter)       # s1
    _sub(field, b22, b12, y, counter)        # t1
    product(xs, y, c21)                      # p4 = s1·t1
    _add(field, a21, a22, xs, counter)       # s2
    _sub(field, b12, b11, y, counter)        # t2
    product(xs, y, c22)                      # p7 = s2·t2
    _sub(field, xs, a11, xs, counter)        # s3 = s2 - a11
    _sub(field, b22, y, y, counter)          # t3 = b22 - t2 = b11 + t1
    product(xs, y, c12)                      # p5 = s3·t3
    _sub(field, a12, xs, xs, counter)        # s4 = a12 - s3
    product(xs, b22, c11)                    # p6 = s4·b22
    product(a11, b11, xp)                    # p1
    _add(field, c12, xp, c12, counter)       # c1 = p1 + p5
    _add(field, c21, c12, c21, counter)      # c2 = c1 + p4
    _add(field, c12, c22, c12, counter)      # c6 = c1 + p7
    _add(field, c22, c21, c22, counter)      # c5 = c2 + p7
    _add(field, c12, c11, c12, counter)      # c7 = c6 + p6
    _sub(field, b21, y, y, counter)          # t4 = b21 - t3
    product(a22, y, c11)                     # p3 = a22·t4
    _add(field, c21, c11, c21, counter)      # c4 = c2 + p3
    product(a12, b21, c11)                   # p2
    _add(field, c11, xp, c11, counter)       # c3 = p1 + p2
    return out


def _winograd_acc_level(field: IField, alpha: Any, a: np.ndarray, b: np.ndarray, c: np.ndarray,
                        policy: RecursionPolicy, budget: Optional[int], counter: Optional[OpCount],
                        workspace: Optional[Workspace]) -> np.ndarray:
    """One accumulating level on an already scaled c.

    X holds s1, s2, s4 and s3, Y holds t1, t2, t3 and -t4, Z gathers
    p1 + p6 + p7 and W keeps p5 for its two destinations. All four are
    quarter blocks; nothing output-sized is allocated.
    """
    m, n = a.shape
    p = b.shape[1]
    m2, n2, p2 = m // 2, n // 2, p // 2
    a11, a12, a21, a22 = a[:m2, :n2], a[:m2, n2:], a[m2:, :n2], a[m2:, n2:]
    b11, b12, b21, b22 = b[:n2, :p2], b[:n2, p2:], b[n2:, :p2], b[n2:, p2:]
    c11, c12, c21, c22 = c[:m2, :p2], c[:m2, p2:], c[m2:, :p2], c[m2:, p2:]

    x = allocate(workspace, field, (m2, n2), WINOGRAD_SCRATCH)
    y = allocate(workspace, field, (n2, p2), WINOGRAD_SCRATCH)
    z = allocate(workspace, field, (m2, p2), WINOGRAD_SCRATCH)
    w = allocate(workspace, field, (m2, p2), WINOGRAD_SCRATCH)
    child = policy.descend(budget)

    def product(lhs: np.ndarray, rhs: np.ndarray, beta: Any, dest: np.ndarray) -> None:
        winograd_acc_into(field, alpha, lhs, rhs, beta, dest, policy, child, counter, workspace)

    product(a11, b11, 0, z)                  # p1
    full_add(field, c11, z, counter)
    product(a12, b21, 1, c11)                # c11 += p1 + p2
    _add(field, a21, a22, x, counter)        # s1
    _sub(field, b12, b11, y, counter)        # t1
    product(x, y, 0, w)                      # p5
    _sub(field, x, a11, x, counter)          # s2
    _sub(field, b22, y, y, counter)          # t2
    product(x, y, 1, z)                      # z = p1 + p6
    full_add(field, c12, z, counter)
    full_add(field, c12, w, counter)
    _sub(field, a12, x, x, counter)          # s4
    product(x, b22, 1, c12)                  # c12 += p1 + p6 + p5 + p3
    _sub(field, a11, a21, x, counter)        # s3
    _sub(field, b22, b12, y, counter)        # t3
    product(x, y, 1, z)                      # z = p1 + p6 + p7
    full_add(field, c22, z, counter)
    full_add(field, c22, w, counter)         # c22 += z + p5
    full_add(field, c21, z, counter)
    _sub(field, b21, y, y, counter)
    _sub(field, y, b11, y, counter)          # -t4 = b21 - t3 - b11
    product(a22, y, 1, c21)                  # c21 += z - p4
    return c


def gemm_winograd(a: Matrix, b: Matrix, policy: Optional[RecursionPolicy] = None,
                  counter: Optional[OpCount] = None, workspace: Optional[Workspace] = None) -> Matrix:
    """
    Strassen–Winograd product A·B.

    Args:
        a: m×n matrix
        b: n×p matrix over the same field
        policy: Recursion control (default threshold 64, unlimited levels)
        counter: Optional operation tally
        workspace: Optional allocation tracker

    Returns:
        The m×p product, exactly equal to the classical one

    Raises:
        DimensionMismatch: If the inner dimensions differ
    """
    if a.cols != b.rows:
        raise DimensionMismatch(f"Inner dimensions differ: {a.shape} by {b.shape}")
    policy = policy or RecursionPolicy()
    out = a.field.zeros((a.rows, b.cols))
    winograd_into(a.field, a.data, b.data, out, policy, policy.initial_budget(), counter, workspace)
    return Matrix(a.field, out)


def peel_odd(a: Matrix, b: Matrix, policy: Optional[RecursionPolicy] = None,
             counter: Optional[OpCount] = None, workspace: Optional[Workspace] = None) -> Matrix:
    """
    A·B with the odd rim peeled off and the even core sent to Winograd.

    A dimension of size 1 leaves no core, so the product is fully classical.
    """
    if a.cols != b.rows:
        raise DimensionMismatch(f"Inner dimensions differ: {a.shape} by {b.shape}")
    policy = policy or RecursionPolicy()
    field = a.field
    out = field.zeros((a.rows, b.cols))
    if min(a.rows, a.cols, b.cols) < 2:
        out[...] = classical_product(field, a.data, b.data, counter)
    else:
        _peeled_product(field, a.data, b.data, out, policy, policy.initial_budget(), counter, workspace)
    return Matrix(field, out)
