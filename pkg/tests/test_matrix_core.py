"""
Tests for dense matrices, the text format, classical kernels and the workspace.
"""

import pytest
import numpy as np

from src.core.errors import DimensionMismatch, MatrixFormatError
from src.core.models import OpCount
from src.fields.complex_field import ComplexField
from src.fields.prime_field import PrimeField
from src.fields.quad_ext_field import QuadExtField
from src.matrix.kernels import add_full, add_lower, gemm_classical, mirror_lower_to_upper, syrk_classical
from src.matrix.matrix import Matrix, random_matrix
from src.matrix.workspace import SYRK_SCRATCH, Workspace, allocate


class TestMatrix:
    """Test cases for Matrix class."""

    def setup_method(self):
        """Set up test fixtures."""
        self.field = PrimeField(101)

    def test_from_rows_reduces_entries(self):
        """Test that integer input is reduced into the field."""
        m = Matrix.from_rows(self.field, [[102, -1], [0, 5]])
        assert m.to_rows() == [[1, 100], [0, 5]]

    def test_ragged_rows(self):
        """Test that ragged input is rejected."""
        with pytest.raises(DimensionMismatch):
            Matrix.from_rows(self.field, [[1, 2], [3]])

    def test_quadrants_share_storage(self):
        """Test that block views write through to the parent."""
        m = Matrix.zeros(self.field, 4, 4)
        _, x12, _, _ = m.quadrants()
        x12.to_matrix().data[...] = 7
        assert m.data[0, 2] == 7 and m.data[1, 3] == 7
        assert m.data[2, 0] == 0

    def test_block_bounds(self):
        """Test that out-of-range blocks are rejected."""
        m = Matrix.zeros(self.field, 4, 4)
        with pytest.raises(DimensionMismatch):
            m.block(2, 2, 3, 1)

    def test_block_overlap(self):
        """Test overlap detection between blocks."""
        m = Matrix.zeros(self.field, 4, 4)
        assert m.block(0, 0, 2, 2).overlaps(m.block(1, 1, 2, 2))
        assert not m.block(0, 0, 2, 2).overlaps(m.block(2, 2, 2, 2))

    def test_lower_and_comparison(self):
        """Test lower-triangle copies and comparison."""
        m = Matrix.from_rows(self.field, [[1, 9], [2, 3]])
        assert m.lower().to_rows() == [[1, 0], [2, 3]]
        assert m.lower_equals(Matrix.from_rows(self.field, [[1, 0], [2, 3]]))
        assert not m.is_symmetric()

    def test_random_matrix_is_deterministic(self):
        """Test seeded generation."""
        a = random_matrix(self.field, 5, 3, seed=4)
        assert a.equals(random_matrix(self.field, 5, 3, seed=4))
        assert not a.equals(random_matrix(self.field, 5, 3, seed=5))
        assert a.is_canonical()


class TestTextFormat:
    """Test cases for the matrix text format."""

    def setup_method(self):
        """Set up test fixtures."""
        self.field = PrimeField(101)

    def test_format(self):
        """Test the header and row layout."""
        m = Matrix.from_rows(self.field, [[1, 2, 3], [4, 5, 6]])
        assert m.to_text() == "2 3\n1 2 3\n4 5 6\n"

    def test_save_and_load(self, tmp_path):
        """Test writing and reading a file."""
        path = tmp_path / "a.txt"
        m = random_matrix(QuadExtField(7), 3, 4, seed=1)
        m.save(path)
        assert Matrix.load(QuadExtField(7), path).equals(m)

    def test_complex_entries(self):
        """Test complex tokens survive a text cycle."""
        field = ComplexField()
        m = Matrix.from_rows(field, [[1 + 2j, -0.5j]])
        assert Matrix.from_text(field, m.to_text()).equals(m)

    @pytest.mark.parametrize("text", [
        "",
        "2\n1 2\n",
        "a b\n",
        "2 2\n1 2\n",
        "1 2\n1\n",
        "1 1\n101\n",
        "1 1\nx\n",
    ])
    def test_malformed(self, text):
        """Test that malformed text raises MatrixFormatError."""
        with pytest.raises(MatrixFormatError):
            Matrix.from_text(self.field, text)


class TestClassicalKernels:
    """Test cases for the classical product kernels."""

    def setup_method(self):
        """Set up test fixtures."""
        self.field = PrimeField(101)

    def test_gemm_example(self):
        """Test a 2×2 product."""
        a = Matrix.from_rows(self.field, [[1, 2], [3, 4]])
        b = Matrix.from_rows(self.field, [[5, 6], [7, 8]])
        c = gemm_classical(1, a, b, 0, Matrix.zeros(self.field, 2, 2))
        assert c.to_rows() == [[19, 22], [43, 50]]

    def test_gemm_identity(self):
        """Test I·A = A."""
        a = random_matrix(self.field, 4, 3, seed=2)
        c = gemm_classical(1, Matrix.identity(self.field, 4), a, 0, Matrix.zeros(self.field, 4, 3))
        assert c.equals(a)

    def test_gemm_alpha_beta(self):
        """Test C ← alpha·A·B + beta·C."""
        a = random_matrix(self.field, 3, 5, seed=1)
        b = random_matrix(self.field, 5, 2, seed=2)
        c0 = random_matrix(self.field, 3, 2, seed=3)
        c = gemm_classical(3, a, b, 7, c0.copy())
        expected = (3 * self.field.matmul(a.data, b.data) + 7 * c0.data) % 101
        assert np.array_equal(c.data, expected)

    def test_gemm_count(self):
        """Test the 2n³ - n² count at n = 4."""
        counter = OpCount()
        a = random_matrix(self.field, 4, 4)
        gemm_classical(1, a, a, 0, Matrix.zeros(self.field, 4, 4), counter)
        assert counter.total == 112
        assert counter.products == 1

    def test_gemm_dimension_mismatch(self):
        """Test that inner dimensions must agree."""
        with pytest.raises(DimensionMismatch):
            gemm_classical(1, Matrix.zeros(self.field, 2, 3), Matrix.zeros(self.field, 2, 3), 0,
                           Matrix.zeros(self.field, 2, 3))

    def test_syrk_example(self):
        """Test Low(A·Aᵀ) for a 2×2 matrix."""
        a = Matrix.from_rows(self.field, [[1, 2], [3, 4]])
        c = syrk_classical(1, a, 0, Matrix.zeros(self.field, 2, 2))
        assert c.to_rows() == [[5, 0], [11, 25]]

    @pytest.mark.parametrize("n,expected", [(4, 70), (8, 540), (16, 4216), (32, 33264)])
    def test_syrk_counts(self, n, expected):
        """Test the classical symmetric product count."""
        counter = OpCount()
        a = random_matrix(self.field, n, n)
        syrk_classical(1, a, 0, Matrix.zeros(self.field, n, n), counter)
        assert counter.total == expected

    def test_syrk_leaves_upper_triangle(self):
        """Test that only the lower triangle is written."""
        a = random_matrix(self.field, 3, 3, seed=8)
        c = Matrix.from_rows(self.field, [[0, 42, 42], [0, 0, 42], [0, 0, 0]])
        syrk_classical(2, a, 5, c)
        assert c.data[0, 1] == 42 and c.data[0, 2] == 42 and c.data[1, 2] == 42

    def test_mirror(self):
        """Test copying the lower triangle upwards."""
        c = Matrix.from_rows(self.field, [[1, 0], [2, 3]])
        assert mirror_lower_to_upper(c).to_rows() == [[1, 2], [2, 3]]
        assert mirror_lower_to_upper(c).to_rows() == [[1, 2], [2, 3]]

    def test_half_and_full_add_counts(self):
        """Test 3 counted additions for a 2×2 half add and 4 for a full add."""
        counter = OpCount()
        c1 = Matrix.zeros(self.field, 2, 2)
        add_lower(c1, Matrix.zeros(self.field, 2, 2), counter)
        assert counter.adds == 3
        add_full(c1, Matrix.zeros(self.field, 2, 2), counter)
        assert counter.adds == 7
        assert c1.equals(Matrix.zeros(self.field, 2, 2))

    def test_half_add_values(self):
        """Test that a half add leaves the strict upper triangle alone."""
        c1 = Matrix.from_rows(self.field, [[1, 1], [1, 1]])
        add_lower(c1, Matrix.from_rows(self.field, [[2, 2], [2, 2]]))
        assert c1.to_rows() == [[3, 1], [3, 3]]


class TestWorkspace:
    """Test cases for the allocation tracker."""

    def test_records_allocations(self):
        """Test tags, shapes and reset."""
        field = PrimeField(7)
        workspace = Workspace()
        buffer = allocate(workspace, field, (2, 3), SYRK_SCRATCH)
        assert buffer.shape == (2, 3) and not buffer.any()
        assert workspace.count(SYRK_SCRATCH) == 1
        assert workspace.shapes(SYRK_SCRATCH) == [(2, 3)]
        workspace.reset()
        assert workspace.count() == 0

    def test_no_workspace(self):
        """Test that allocation works untracked."""
        assert allocate(None, PrimeField(7), (2,), SYRK_SCRATCH).shape == (2,)
