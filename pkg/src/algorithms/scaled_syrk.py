"""
Symmetric products with diagonal (A·D·Aᵀ) and block-diagonal (A·B·Aᵀ) scaling.

Both reduce to a plain fast symmetric product: the scaling is factored as
Δ·Δᵀ (possibly with one extra column) and Δ is folded into the columns of A.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..core.errors import DimensionMismatch, FieldError, MalformedScaling, UnsupportedField
from ..core.interfaces import IField
from ..core.models import OpCount, tally
from ..fields.binary_field import BinaryField
from ..fields.prime_field import PrimeField
from ..fields.sum_of_squares import nrsyf
from ..matrix.matrix import Matrix
from ..matrix.workspace import Workspace
from .fast_syrk import SyrkPlan, syrk_fast

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Scalar:
    """1×1 block (d)."""
    d: Any

    @property
    def dim(self) -> int:
        return 1


@dataclass(frozen=True)
class TwoByTwo:
    """2×2 block ((0, beta), (beta, gamma)); gamma = 0 is antidiagonal."""
    beta: Any
    gamma: Any = 0

    def __post_init__(self):
        if self.beta == 0:
            raise MalformedScaling("2×2 blocks need a nonzero off-diagonal entry")

    @property
    def dim(self) -> int:
        return 2

    @property
    def is_antidiagonal(self) -> bool:
        return self.gamma == 0


Block = Union[Scalar, TwoByTwo]


@dataclass(frozen=True)
class DiagonalScaling:
    """D = Diag(d1, ..., dn)."""
    entries: Tuple[Any, ...]

    def __post_init__(self):
        object.__setattr__(self, 'entries', tuple(int(d) if isinstance(d, (int, np.integer)) else d
                                                  for d in self.entries))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def to_matrix(self, field: IField) -> Matrix:
        data = field.zeros((self.dim, self.dim))
        np.fill_diagonal(data, self.entries)
        return Matrix(field, data)


@dataclass(frozen=True)
class BlockDiagonal:
    """Block-diagonal matrix of 1×1 and 2×2 blocks, in order."""
    blocks: Tuple[Block, ...]

    def __post_init__(self):
        object.__setattr__(self, 'blocks', tuple(self.blocks))

    @property
    def dim(self) -> int:
        return sum(block.dim for block in self.blocks)

    @property
    def is_diagonal(self) -> bool:
        return all(isinstance(block, Scalar) for block in self.blocks)

    def diagonal(self) -> DiagonalScaling:
        if not self.is_diagonal:
            raise MalformedScaling("Scaling has 2×2 blocks and is not diagonal")
        return DiagonalScaling(tuple(block.d for block in self.blocks))

    def to_matrix(self, field: IField) -> Matrix:
        data = field.zeros((self.dim, self.dim))
        j = 0
        for block in self.blocks:
            if isinstance(block, Scalar):
                data[j, j] = block.d
            else:
                data[j, j + 1] = data[j + 1, j] = block.beta
                data[j + 1, j + 1] = block.gamma
            j += block.dim
        return Matrix(field, data)

    # Text format: one block per line, "S d" or "T beta gamma"

    def to_text(self, field: IField) -> str:
        fmt = field.format_element
        lines = []
        for block in self.blocks:
            if isinstance(block, Scalar):
                lines.append(f"S {fmt(block.d)}")
            else:
                lines.append(f"T {fmt(block.beta)} {fmt(block.gamma)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, field: IField, text: str) -> 'BlockDiagonal':
        """
        Parse the block-diagonal text format.

        Raises:
            MalformedScaling: On unknown block kinds, wrong token counts,
                non-canonical entries or beta = 0
        """
        blocks: List[Block] = []
        for number, line in enumerate(text.splitlines(), start=1):
            tokens = line.split()
            if not tokens or tokens[0].startswith("#"):
                continue
            kind, values = tokens[0].upper(), tokens[1:]
            expected = {"S": 1, "T": 2}.get(kind)
            if expected is None:
                raise MalformedScaling(f"Line {number}: unknown block kind '{tokens[0]}'")
            if len(values) != expected:
                raise MalformedScaling(f"Line {number}: '{kind}' blocks take {expected} value(s), got {len(values)}")
            try:
                parsed = [field.parse_element(v) for v in values]
            except (FieldError, ValueError) as e:
                raise MalformedScaling(f"Line {number}: {e}")
            blocks.append(Scalar(parsed[0]) if kind == "S" else TwoByTwo(parsed[0], parsed[1]))
        return cls(tuple(blocks))

    @classmethod
    def load(cls, field: IField, path: Union[str, Path]) -> 'BlockDiagonal':
        return cls.from_text(field, Path(path).read_text(encoding='utf-8'))


def _require_scaling_field(field: IField) -> None:
    if isinstance(field, BinaryField):
        return
    if not isinstance(field, PrimeField):
        raise UnsupportedField(f"Scaled symmetric products need a prime or binary field, got {field.name}")


def _check_entries(field: IField, entries: Sequence[Any]) -> None:
    if len(entries) and not field.contains(np.asarray(entries, dtype=np.int64)):
        raise MalformedScaling(f"Scaling entries must be canonical elements of {field.name}")


def _scale_column(field: IField, abar: np.ndarray, j: int, factor: Any, counter: Optional[OpCount]) -> None:
    abar[:, j] = field.mul(factor, abar[:, j])
    tally(counter, mults=abar.shape[0])


def fold_diagonal(a: Matrix, d: DiagonalScaling, counter: Optional[OpCount] = None) -> Matrix:
    """
    Ā with Ā·Āᵀ = A·D·Aᵀ.

    Residue columns (zero included) are scaled by a square root. Non-residues
    are paired in order and each pair of columns is multiplied by the 2×2
    factor of diag(d_i, d_j); an odd count first duplicates one non-residue
    against an extra zero column.

    Raises:
        DimensionMismatch: If D's size differs from A's column count
        UnsupportedField: Outside prime and binary fields
    """
    field = a.field
    _require_scaling_field(field)
    if d.dim != a.cols:
        raise DimensionMismatch(f"Scaling has dimension {d.dim} but A has {a.cols} columns")
    _check_entries(field, d.entries)

    entries = list(d.entries)
    if field.characteristic == 2:
        non_residues: List[int] = []
    else:
        non_residues = [j for j, x in enumerate(entries) if x != 0 and not field.is_square(x)]

    abar = a.data.copy()
    if len(non_residues) % 2:
        first = non_residues[0]
        logger.debug(f"Odd number of non-residues; duplicating d[{first}] = {entries[first]} on a zero column")
        abar = np.hstack([abar, field.zeros((a.rows, 1))])
        entries.append(entries[first])
        non_residues.append(len(entries) - 1)

    paired = set(non_residues)
    for j, x in enumerate(entries):
        if j not in paired and x != 1:
            _scale_column(field, abar, j, field.sqrt(x), counter)

    for i, j in zip(non_residues[::2], non_residues[1::2]):
        delta = nrsyf(field, entries[i], entries[j]).data
        ai, aj = abar[:, i].copy(), abar[:, j].copy()
        abar[:, i] = field.add(field.mul(delta[0, 0], ai), field.mul(delta[1, 0], aj))
        abar[:, j] = field.add(field.mul(delta[0, 1], ai), field.mul(delta[1, 1], aj))
        tally(counter, mults=4 * a.rows, adds=2 * a.rows)
    return Matrix(field, abar)


def fold_block_diagonal(a: Matrix, b: BlockDiagonal,
                        counter: Optional[OpCount] = None) -> Tuple[Matrix, DiagonalScaling]:
    """
    (Ā, D̄) with Ā·D̄·Āᵀ = A·B·Aᵀ and D̄ diagonal.

    Odd characteristic: antidiagonal blocks become diag(β/2, -β/2) under the
    column transform [[1, 1], [1, -1]], antitriangular blocks become
    diag(-β²/γ, γ) under [[1, β/γ], [0, 1]]. Characteristic 2: antitriangular
    blocks are factored with γ^(1/2); antidiagonal blocks consume a scalar
    pivot through a 3-column transform, and when no pivot exists the first
    one is split with one appended column.

    Raises:
        DimensionMismatch: If B's size differs from A's column count
        UnsupportedField: Outside prime and binary fields
    """
    field = a.field
    _require_scaling_field(field)
    if b.dim != a.cols:
        raise DimensionMismatch(f"Scaling has dimension {b.dim} but A has {a.cols} columns")
    values = [v for block in b.blocks for v in ((block.d,) if isinstance(block, Scalar) else (block.beta, block.gamma))]
    _check_entries(field, values)

    abar = a.data.copy()
    dbar: List[Any] = [field.one] * a.cols
    starts = np.cumsum([0] + [block.dim for block in b.blocks])[:-1]
    antidiagonal: List[Tuple[int, Any]] = []
    rows = a.rows

    for j, block in zip(starts, b.blocks):
        j = int(j)
        if isinstance(block, Scalar):
            dbar[j] = block.d
        elif field.characteristic != 2:
            aj, ak = abar[:, j].copy(), abar[:, j + 1].copy()
            if block.is_antidiagonal:
                half = field.mul(block.beta, field.inv(2))
                dbar[j], dbar[j + 1] = half, field.neg(half)
                abar[:, j] = field.add(aj, ak)
                abar[:, j + 1] = field.sub(aj, ak)
                tally(counter, adds=2 * rows)
            else:
                ratio = field.mul(block.beta, field.inv(block.gamma))
                dbar[j], dbar[j + 1] = field.neg(field.mul(ratio, block.beta)), block.gamma
                abar[:, j + 1] = field.add(field.mul(ratio, aj), ak)
                tally(counter, mults=rows, adds=rows)
        elif block.is_antidiagonal:
            antidiagonal.append((j, block.beta))
        else:
            delta = field.sqrt(block.gamma)
            _scale_column(field, abar, j, field.mul(block.beta, field.inv(delta)), counter)
            _scale_column(field, abar, j + 1, delta, counter)
            abar[:, j + 1] = field.add(abar[:, j + 1], abar[:, j])
            abar[:, [j, j + 1]] = abar[:, [j + 1, j]]
            tally(counter, adds=rows)

    if antidiagonal:
        if 2 * len(antidiagonal) == a.cols:
            j, beta = antidiagonal.pop(0)
            logger.debug(f"All blocks antidiagonal; splitting the block at column {j} with one extra column")
            _scale_column(field, abar, j + 1, beta, counter)
            abar = np.hstack([abar, field.add(abar[:, j], abar[:, j + 1])[:, None]])
            tally(counter, adds=rows)
            dbar.append(field.one)
            pivot, delta = j, field.one
        else:
            taken = {k for j, _ in antidiagonal for k in (j, j + 1)}
            pivot = next(k for k in range(a.cols) if k not in taken)
            delta = field.sqrt(dbar[pivot])
            dbar[pivot] = field.one

        for j, beta in antidiagonal:
            _scale_column(field, abar, pivot, delta, counter)
            _scale_column(field, abar, j + 1, beta, counter)
            al, aj, ak = abar[:, pivot].copy(), abar[:, j].copy(), abar[:, j + 1].copy()
            abar[:, pivot] = field.add(al, aj)
            abar[:, j] = field.add(al, ak)
            abar[:, j + 1] = field.add(abar[:, pivot], ak)
            tally(counter, adds=3 * rows)
            delta = field.one

    return Matrix(field, abar), DiagonalScaling(tuple(dbar))


def syrkd(a: Matrix, d: DiagonalScaling, plan: Optional[SyrkPlan] = None, counter: Optional[OpCount] = None,
          workspace: Optional[Workspace] = None) -> Matrix:
    """
    Lower triangle of A·D·Aᵀ for diagonal D.

    Args:
        a: m×n matrix over an odd prime field or a binary field
        d: Diagonal of length n
        plan: Options for the final fast symmetric product

    Returns:
        m×m matrix whose lower triangle is A·D·Aᵀ
    """
    abar = fold_diagonal(a, d, counter)
    return syrk_fast(abar, plan or SyrkPlan(a.field), counter, workspace)


def syrkbd(a: Matrix, b: BlockDiagonal, plan: Optional[SyrkPlan] = None, counter: Optional[OpCount] = None,
           workspace: Optional[Workspace] = None) -> Matrix:
    """
    Lower triangle of A·B·Aᵀ for block-diagonal B of 1×1 and 2×2 blocks.

    The 2×2 blocks are rewritten into diagonal form and the result handed to
    :func:`syrkd`.
    """
    abar, dbar = fold_block_diagonal(a, b, counter)
    return syrkd(abar, dbar, plan, counter, workspace)
