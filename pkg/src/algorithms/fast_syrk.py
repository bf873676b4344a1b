"""
Symmetric matrix product A·Aᵀ with five recursive block products.

Each level forms S1 = (A21 - A11)·Y, S2 = A22 - A21·Y, S3 = S1 - A22 and
S4 = S3 + A12 from a skew-orthogonal Y, then needs three recursive
symmetric products (A11, A12, S3) and two general ones (A22·S4ᵀ, S1·S2ᵀ).
The in-place schedule uses the strict upper triangle of the output as its
only temporary; the accumulating schedule needs one extra half-size block.
"""

import logging
from dataclasses import dataclass, field as dataclass_field, replace
from typing import Any, Dict, Optional

import numpy as np

from ..core.errors import AliasingError, DimensionMismatch, UnsupportedField
from ..core.interfaces import IField
from ..core.models import OpCount, RecursionPolicy, tally
from ..fields.quad_ext_field import QuadExtField
from ..fields.skew_orthogonal import SkewOrthogonal, apply_skew, skew_orthogonal, skew_unitary
from ..matrix.kernels import (
    classical_syrk_lower,
    full_add,
    half_add,
    is_one,
    is_zero,
    mirror_lower,
    transpose
)
from ..matrix.matrix import Matrix
from ..matrix.workspace import PADDING, SYRK_SCRATCH, Workspace, allocate
from .winograd import winograd_acc_into, winograd_into

logger = logging.getLogger(__name__)


@dataclass
class SyrkPlan:
    """
    Everything a fast symmetric product needs besides its operands.

    The skew-orthogonal (or skew-unitary, when ``conjugate`` is set) form is
    built once per field and resized per recursion level on demand.
    """
    field: IField
    policy: RecursionPolicy = dataclass_field(default_factory=RecursionPolicy)
    mirror_output: bool = False
    conjugate: bool = False
    _forms: Dict[int, SkewOrthogonal] = dataclass_field(default_factory=dict, init=False, repr=False)

    @classmethod
    def for_field(cls, field: IField, threshold: int = 64, max_levels: Optional[int] = None,
                  mirror_output: bool = False, conjugate: bool = False) -> 'SyrkPlan':
        return cls(field, RecursionPolicy(threshold, max_levels), mirror_output, conjugate)

    def skew(self, dim: int) -> SkewOrthogonal:
        """Y of size dim×dim for this field."""
        form = self._forms.get(dim)
        if form is None:
            base = self._forms.get(2)
            if base is None:
                base = skew_unitary(self.field, 2) if self.conjugate else skew_orthogonal(self.field, 2)
                self._forms[2] = base
                logger.debug(f"Skew form for {self.field.name}: {base.form} (ycost {base.ycost})")
            form = base.with_dim(dim)
            self._forms[dim] = form
        return form

    @property
    def ycost(self) -> int:
        return self.skew(2).ycost

    @property
    def needs_even_half(self) -> bool:
        """True when Y is a pair form, which only exists in even dimension."""
        return self.skew(2).is_pair


def _scale_lower(field: IField, alpha: Any, c: np.ndarray, counter: Optional[OpCount]) -> None:
    if not is_one(alpha):
        idx = np.tril_indices(c.shape[0])
        c[idx] = field.mul(alpha, c[idx])
        tally(counter, mults=len(idx[0]))


class _Schedule:
    """Recursive driver shared by the in-place and accumulating products."""

    CLASSICAL = "classical"
    PANELS = "panels"
    PAD = "pad"
    LEVEL = "level"

    def __init__(self, plan: SyrkPlan, counter: Optional[OpCount], workspace: Optional[Workspace]):
        self.plan = plan
        self.field = plan.field
        self.policy = plan.policy
        self.conjugate = plan.conjugate
        self.counter = counter
        self.workspace = workspace

    # Helpers

    def _t(self, x: np.ndarray) -> np.ndarray:
        return transpose(self.field, x, self.conjugate)

    def _sub(self, x: np.ndarray, y: np.ndarray, out: np.ndarray) -> None:
        self.field.sub(x, y, out=out)
        tally(self.counter, adds=out.size)

    def _add(self, x: np.ndarray, y: np.ndarray, out: np.ndarray) -> None:
        self.field.add(x, y, out=out)
        tally(self.counter, adds=out.size)

    def _product(self, a: np.ndarray, b: np.ndarray, out: np.ndarray, budget: Optional[int]) -> None:
        winograd_into(self.field, a, b, out, self.policy, budget, self.counter, self.workspace)

    def _route(self, a: np.ndarray, budget: Optional[int]) -> str:
        n, k = a.shape
        if not self.policy.allows(budget, n, k) or n % 2:
            return self.CLASSICAL
        if k > n:
            return self.PANELS
        if k % 2:
            return self.CLASSICAL
        if self.plan.needs_even_half and (k // 2) % 2:
            return self.PAD if k + 2 <= n else self.CLASSICAL
        return self.LEVEL

    def _pad(self, a: np.ndarray) -> np.ndarray:
        """[A1 | 0 | A2 | 0]: one zero column per half, so each half becomes even."""
        n, k = a.shape
        k2 = k // 2
        logger.debug(f"Padding {n}×{k} operand to {n}×{k + 2} for a pair-form Y")
        padded = allocate(self.workspace, self.field, (n, k + 2), PADDING)
        padded[:, :k2] = a[:, :k2]
        padded[:, k2 + 1:k + 1] = a[:, k2:]
        return padded

    def _classical(self, alpha: Any, a: np.ndarray, beta: Any, c: np.ndarray) -> None:
        classical_syrk_lower(self.field, a, c, alpha, beta, self.counter, self.conjugate)

    def _panels(self, alpha: Any, a: np.ndarray, beta: Any, c: np.ndarray, budget: Optional[int],
                tmp: Optional[np.ndarray], in_place: bool) -> None:
        """k > n: n-wide column panels, every panel after the first accumulating with beta = 1."""
        n, k = a.shape
        logger.debug(f"Splitting {n}×{k} operand into column panels of width {n}")
        if tmp is None:
            tmp = allocate(self.workspace, self.field, (n // 2, n // 2), SYRK_SCRATCH)
        if in_place:
            self.syrk(a[:, :n], c, budget)
        else:
            self.syrk_acc(alpha, a[:, :n], beta, c, budget, tmp)
        for start in range(n, k, n):
            self.syrk_acc(alpha, a[:, start:start + n], 1, c, budget, tmp)

    # In-place schedule

    def syrk(self, a: np.ndarray, c: np.ndarray, budget: Optional[int]) -> None:
        """Low(c) ← a·aᵀ; the strict upper triangle of c is scratch."""
        route = self._route(a, budget)
        if route == self.CLASSICAL:
            self._classical(1, a, 0, c)
        elif route == self.PANELS:
            self._panels(1, a, 0, c, budget, None, in_place=True)
        elif route == self.PAD:
            self.syrk(self._pad(a), c, budget)
        else:
            self._syrk_level(a, c, budget)

    def _syrk_level(self, a: np.ndarray, c: np.ndarray, budget: Optional[int]) -> None:
        field, counter = self.field, self.counter
        n, k = a.shape
        m, k2 = n // 2, k // 2
        a11, a12, a21, a22 = a[:m, :k2], a[:m, k2:], a[m:, :k2], a[m:, k2:]
        c11, c12, c21, c22 = c[:m, :m], c[:m, m:], c[m:, :m], c[m:, m:]
        skew = self.plan.skew(k2)
        child = self.policy.descend(budget)

        s1 = c21[:, :k2]
        self._sub(a21, a11, s1)
        apply_skew(field, skew, s1, s1, counter)           # 1. S1 = (A21 - A11)·Y
        s2 = c12[:, :k2]
        apply_skew(field, skew, a21, s2, counter)
        self._sub(a22, s2, s2)                             # 2. S2 = A22 - A21·Y
        self._product(s2, self._t(s1), c22, child)         # 3. P4ᵀ = S2·S1ᵀ
        s3 = s1
        self._sub(s1, a22, s3)                             # 4. S3 = S1 - A22
        self.syrk(s3, c12, child)                          # 5. P5 = S3·S3ᵀ
        s4 = c11[:, :k2]
        self._add(s3, a12, s4)                             # 6. S4 = S3 + A12
        self._product(a22, self._t(s4), c21, child)        # 7. P3 = A22·S4ᵀ
        self.syrk(a11, c11, child)                         # 8. P1 = A11·A11ᵀ
        half_add(field, c12, c11, counter)                 # 9. U1 = P1 + P5
        mirror_lower(field, c12, self.conjugate)
        full_add(field, c12, self._t(c22), counter)        # 10. U2 = U1 + P4
        full_add(field, c21, c12, counter)                 # 11. U4 = U2 + P3
        half_add(field, c22, c12, counter)                 # 12. U5 = U2 + P4ᵀ
        self.syrk(a12, c12, child)                         # 13. P2 = A12·A12ᵀ
        half_add(field, c11, c12, counter)                 # 14. U3 = P1 + P2

    # Accumulating schedule

    def syrk_acc(self, alpha: Any, a: np.ndarray, beta: Any, c: np.ndarray, budget: Optional[int],
                 tmp: Optional[np.ndarray] = None) -> None:
        """Low(c) ← alpha·a·aᵀ + beta·Low(c).

        ``tmp`` is an n/2×n/2 scratch block; one is requested from the
        workspace when the caller has none to lend.
        """
        route = self._route(a, budget)
        if route in (self.PAD, self.LEVEL) and a.shape[0] < 6 and not is_zero(beta):
            # Up(C11) must hold the diagonal of C22
            route = self.CLASSICAL
        if route == self.CLASSICAL:
            self._classical(alpha, a, beta, c)
        elif route == self.PANELS:
            self._panels(alpha, a, beta, c, budget, tmp, in_place=False)
        elif route == self.PAD:
            self.syrk_acc(alpha, self._pad(a), beta, c, budget, tmp)
        else:
            m = a.shape[0] // 2
            if tmp is None:
                tmp = allocate(self.workspace, self.field, (m, m), SYRK_SCRATCH)
            self._acc_level(alpha, a, beta, c, budget, tmp)

    def _product_acc(self, alpha: Any, a: np.ndarray, b: np.ndarray, beta: Any, out: np.ndarray,
                     budget: Optional[int]) -> None:
        winograd_acc_into(self.field, alpha, a, b, beta, out, self.policy, budget, self.counter, self.workspace)

    def _acc_level(self, alpha: Any, a: np.ndarray, beta: Any, c: np.ndarray, budget: Optional[int],
                   tmp: np.ndarray) -> None:
        field, counter = self.field, self.counter
        n, k = a.shape
        m, k2 = n // 2, k // 2
        a11, a12, a21, a22 = a[:m, :k2], a[:m, k2:], a[m:, :k2], a[m:, k2:]
        c11, c12, c21, c22 = c[:m, :m], c[:m, m:], c[m:, :m], c[m:, m:]
        skew = self.plan.skew(k2)
        child = self.policy.descend(budget)
        accumulate = not is_zero(beta)

        if accumulate:
            self._fold_c22(beta, c11, c21, c22)

        s1 = tmp[:, :k2]
        self._sub(a21, a11, s1)
        apply_skew(field, skew, s1, s1, counter)           # S1 = (A21 - A11)·Y
        s2 = c12[:, :k2]
        apply_skew(field, skew, a21, s2, counter)
        self._sub(a22, s2, s2)                             # S2 = A22 - A21·Y
        self._product_acc(alpha, s2, self._t(s1), 1 if accumulate else 0, c22, child)  # P4ᵀ + beta·Ls
        s3 = s1
        self._sub(s1, a22, s3)                             # S3 = S1 - A22
        self.syrk(s3, c12, child)                          # P5 = alpha·S3·S3ᵀ
        _scale_lower(field, alpha, c12, counter)
        s4 = s3
        self._add(s3, a12, s4)                             # S4 = S3 + A12
        self._product_acc(alpha, a22, self._t(s4), beta, c21, child)  # P3 = alpha·A22·S4ᵀ + beta·C21
        self.syrk(a11, tmp, child)                         # P1 = alpha·A11·A11ᵀ
        _scale_lower(field, alpha, tmp, counter)
        half_add(field, c12, tmp, counter)                 # U1 = P1 + P5
        if accumulate:
            self._restore_diagonal(beta, c11, c12)         # U1 + beta·Diag(C22)
        mirror_lower(field, c12, self.conjugate)
        full_add(field, c12, self._t(c22), counter)        # U2 = U1 + P4
        full_add(field, c21, c12, counter)                 # U4 = U2 + P3
        half_add(field, c22, c12, counter)                 # U5 = U2 + P4ᵀ + beta·C22

        # P2 = alpha·A12·A12ᵀ + beta·C11, borrowing the strict upper corner of tmp
        h = m // 2
        self.syrk_acc(alpha, a12, beta, c11, child, tmp[:h, m - h:])
        half_add(field, c11, tmp, counter)                 # U3 = P1 + P2

    def _fold_c22(self, beta: Any, c11: np.ndarray, c21: np.ndarray, c22: np.ndarray) -> None:
        """Spread Low(C22) so that the schedule needs no copy of it.

        C21 loses Low(C22)ᵀ on and above its diagonal, the diagonal of C22
        is parked in the first m slots of Up(C11), and C22 keeps
        beta·StrictLow(C22) with zeros elsewhere.
        """
        field, counter = self.field, self.counter
        m = c22.shape[0]
        upper = np.triu_indices(m)
        c21[upper] = field.sub(c21[upper], self._t(c22)[upper])
        tally(counter, adds=m * (m + 1) // 2)
        slots = tuple(idx[:m] for idx in np.triu_indices(m, 1))
        c11[slots] = np.diagonal(c22)
        c22[upper] = field.zero
        if not is_one(beta):
            lower = np.tril_indices(m, -1)
            c22[lower] = field.mul(beta, c22[lower])
            tally(counter, mults=m * (m - 1) // 2)

    def _restore_diagonal(self, beta: Any, c11: np.ndarray, u1: np.ndarray) -> None:
        field, counter = self.field, self.counter
        m = u1.shape[0]
        saved = c11[tuple(idx[:m] for idx in np.triu_indices(m, 1))]
        if not is_one(beta):
            saved = field.mul(beta, saved)
            tally(counter, mults=m)
        d = np.arange(m)
        u1[d, d] = field.add(u1[d, d], saved)
        tally(counter, adds=m)


def _check_plan(a: Matrix, plan: SyrkPlan) -> None:
    if plan.field != a.field:
        raise UnsupportedField(f"Plan is built for {plan.field.name} but A is over {a.field.name}")


def _finish(plan: SyrkPlan, c: np.ndarray) -> None:
    if plan.mirror_output:
        mirror_lower(plan.field, c, plan.conjugate)


def syrk_fast(a: Matrix, plan: Optional[SyrkPlan] = None, counter: Optional[OpCount] = None,
              workspace: Optional[Workspace] = None) -> Matrix:
    """
    Lower triangle of A·Aᵀ with three recursive symmetric products per level.

    Args:
        a: n×k matrix
        plan: Field, recursion policy and output options (default: threshold 64)
        counter: Optional operation tally
        workspace: Optional allocation tracker

    Returns:
        n×n matrix C with Low(C) = Low(A·Aᵀ). The strict upper triangle holds
        scratch values unless ``plan.mirror_output`` is set.
    """
    plan = plan or SyrkPlan(a.field)
    _check_plan(a, plan)
    c = a.field.zeros((a.rows, a.rows))
    _Schedule(plan, counter, workspace).syrk(a.data, c, plan.policy.initial_budget())
    _finish(plan, c)
    return Matrix(a.field, c)


def syrk_fast_acc(alpha: Any, a: Matrix, beta: Any, c: Matrix, plan: Optional[SyrkPlan] = None,
                  counter: Optional[OpCount] = None, workspace: Optional[Workspace] = None) -> Matrix:
    """
    In-place Low(C) ← alpha·A·Aᵀ + beta·Low(C).

    Only the lower triangle of C is read; its strict upper triangle is used
    as scratch together with one n/2×n/2 block.

    Raises:
        DimensionMismatch: If C is not n×n
        AliasingError: If C shares memory with A
    """
    plan = plan or SyrkPlan(a.field)
    _check_plan(a, plan)
    if c.shape != (a.rows, a.rows):
        raise DimensionMismatch(f"Output {c.shape} must be {a.rows}×{a.rows}")
    if np.shares_memory(a.data, c.data):
        raise AliasingError("Output C must not share memory with A")

    schedule = _Schedule(plan, counter, workspace)
    if is_zero(alpha):
        if not is_one(beta):
            _scale_lower(a.field, beta, c.data, counter)
    else:
        schedule.syrk_acc(alpha, a.data, beta, c.data, plan.policy.initial_budget())
    _finish(plan, c.data)
    return c


def herk_fast(a: Matrix, plan: Optional[SyrkPlan] = None, counter: Optional[OpCount] = None,
              workspace: Optional[Workspace] = None) -> Matrix:
    """
    Lower triangle of A·conj(A)ᵀ over F_{p^2}.

    Same schedule as :func:`syrk_fast` with conjugate transposes and a
    skew-unitary Y. Over the complex numbers no skew-unitary matrix exists.

    Raises:
        UnsupportedField: If A is not over a quadratic extension field
    """
    if not isinstance(a.field, QuadExtField):
        raise UnsupportedField(f"Conjugate symmetric products need F_(p^2), got {a.field.name}")
    plan = plan or SyrkPlan(a.field, conjugate=True)
    if not plan.conjugate:
        plan = replace(plan, conjugate=True)
    return syrk_fast(a, plan, counter, workspace)
