"""
Dense matrices over a field, block views and the matrix text format.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Any, List, Sequence, Tuple, Union

import numpy as np

from ..core.errors import DimensionMismatch, FieldError, MatrixFormatError
from ..core.interfaces import IField


@dataclass(eq=False)
class Matrix:
    """Row-major dense matrix whose entries live in ``field``.

    ``data`` may be a view into a larger array; block views share storage
    with their parent.
    """
    field: IField
    data: np.ndarray

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=self.field.dtype)
        if self.data.ndim != 2:
            raise DimensionMismatch(f"Matrix data must be two-dimensional, got {self.data.ndim} dimensions")

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.data.shape

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    # Construction

    @classmethod
    def zeros(cls, field: IField, rows: int, cols: int) -> 'Matrix':
        return cls(field, field.zeros((rows, cols)))

    @classmethod
    def identity(cls, field: IField, n: int) -> 'Matrix':
        data = field.zeros((n, n))
        np.fill_diagonal(data, field.one)
        return cls(field, data)

    @classmethod
    def from_rows(cls, field: IField, rows: Sequence[Sequence[Any]]) -> 'Matrix':
        """Build from nested sequences of integers (or complex numbers)."""
        rows = [list(r) for r in rows]
        width = len(rows[0]) if rows else 0
        if any(len(r) != width for r in rows):
            raise DimensionMismatch("All rows must have the same length")
        data = np.array(rows, dtype=field.dtype).reshape(len(rows), width)
        return cls(field, field.normalize(data))

    def copy(self) -> 'Matrix':
        return Matrix(self.field, self.data.copy())

    # Views and shape operations

    def block(self, row: int, col: int, rows: int, cols: int) -> 'BlockView':
        return BlockView(self, row, col, rows, cols)

    def quadrants(self) -> Tuple['BlockView', 'BlockView', 'BlockView', 'BlockView']:
        """(X11, X12, X21, X22) for a matrix with even dimensions."""
        if self.rows % 2 or self.cols % 2:
            raise DimensionMismatch(f"Quadrants need even dimensions, got {self.rows}×{self.cols}")
        r, c = self.rows // 2, self.cols // 2
        return self.block(0, 0, r, c), self.block(0, c, r, c), self.block(r, 0, r, c), self.block(r, c, r, c)

    def transpose(self) -> 'Matrix':
        return Matrix(self.field, self.data.T.copy())

    def conj_transpose(self) -> 'Matrix':
        return Matrix(self.field, np.ascontiguousarray(self.field.conj(self.data.T)))

    def lower(self) -> 'Matrix':
        """Copy with everything above the diagonal set to zero."""
        if not self.is_square:
            raise DimensionMismatch("Lower triangle requires a square matrix")
        data = self.data.copy()
        data[np.triu_indices(self.rows, 1)] = self.field.zero
        return Matrix(self.field, data)

    # Comparison

    def equals(self, other: 'Matrix') -> bool:
        return self.shape == other.shape and self.field.equal(self.data, other.data)

    def lower_equals(self, other: 'Matrix') -> bool:
        """Compare only the lower triangles, diagonal included."""
        if self.shape != other.shape or not self.is_square:
            return False
        idx = np.tril_indices(self.rows)
        return self.field.equal(self.data[idx], other.data[idx])

    def is_symmetric(self) -> bool:
        return self.is_square and self.field.equal(self.data, self.data.T)

    def is_canonical(self) -> bool:
        return self.field.contains(self.data)

    # Text format

    def to_text(self) -> str:
        """First line ``rows cols``, then one line of entries per row."""
        fmt = self.field.format_element
        lines = [f"{self.rows} {self.cols}"]
        lines.extend(" ".join(fmt(x) for x in row) for row in self.data)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, field: IField, text: str) -> 'Matrix':
        """
        Parse the matrix text format.

        Raises:
            MatrixFormatError: On a malformed header, wrong entry counts or
                non-canonical entries
        """
        lines = [line.split() for line in text.splitlines() if line.strip()]
        if not lines or len(lines[0]) != 2:
            raise MatrixFormatError("Header must be 'rows cols'")
        try:
            rows, cols = int(lines[0][0]), int(lines[0][1])
        except ValueError:
            raise MatrixFormatError(f"Header must contain two integers, got {' '.join(lines[0])}")
        if rows < 0 or cols < 0:
            raise MatrixFormatError("Matrix dimensions must be non-negative")
        body = lines[1:]
        if len(body) != rows:
            raise MatrixFormatError(f"Expected {rows} rows, found {len(body)}")

        data = field.zeros((rows, cols))
        for i, tokens in enumerate(body):
            if len(tokens) != cols:
                raise MatrixFormatError(f"Row {i + 1} has {len(tokens)} entries, expected {cols}")
            for j, token in enumerate(tokens):
                try:
                    data[i, j] = field.parse_element(token)
                except (FieldError, ValueError) as e:
                    raise MatrixFormatError(f"Row {i + 1}, column {j + 1}: {e}")
        return cls(field, data)

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.to_text(), encoding='utf-8')

    @classmethod
    def load(cls, field: IField, path: Union[str, Path]) -> 'Matrix':
        return cls.from_text(field, Path(path).read_text(encoding='utf-8'))

    def to_rows(self) -> List[List[Any]]:
        if self.field.is_exact:
            return [[int(x) for x in row] for row in self.data]
        return [[complex(x) for x in row] for row in self.data]

    def __repr__(self) -> str:
        return f"Matrix({self.field.name}, {self.rows}×{self.cols})"


@dataclass(frozen=True)
class BlockView:
    """Rectangular window into a parent matrix, sharing its storage."""
    parent: Matrix
    row: int
    col: int
    rows: int
    cols: int

    def __post_init__(self):
        if min(self.row, self.col, self.rows, self.cols) < 0:
            raise DimensionMismatch("Block offsets and sizes must be non-negative")
        if self.row + self.rows > self.parent.rows or self.col + self.cols > self.parent.cols:
            raise DimensionMismatch(
                f"Block [{self.row}:{self.row + self.rows}, {self.col}:{self.col + self.cols}] "
                f"exceeds parent {self.parent.rows}×{self.parent.cols}"
            )

    @property
    def data(self) -> np.ndarray:
        return self.parent.data[self.row:self.row + self.rows, self.col:self.col + self.cols]

    def to_matrix(self) -> Matrix:
        """Matrix over the same storage; writes go through to the parent."""
        return Matrix(self.parent.field, self.data)

    def overlaps(self, other: 'BlockView') -> bool:
        if other.parent is not self.parent:
            return False
        return (self.row < other.row + other.rows and other.row < self.row + self.rows
                and self.col < other.col + other.cols and other.col < self.col + self.cols)


def random_matrix(field: IField, rows: int, cols: int, seed: int = 0) -> Matrix:
    """Deterministic random matrix from numpy's seeded PCG64 generator."""
    rng = np.random.default_rng(seed)
    return Matrix(field, field.random((rows, cols), rng))

