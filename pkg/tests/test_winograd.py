"""
Tests for the Strassen–Winograd product and odd-dimension peeling.
"""

import pytest

from src.algorithms.winograd import gemm_winograd, peel_odd, winograd_acc_into
from src.analysis.opcount import winograd_count
from src.core.errors import DimensionMismatch
from src.core.models import OpCount, RecursionPolicy
from src.fields.binary_field import BinaryField
from src.fields.complex_field import ComplexField
from src.fields.prime_field import PrimeField
from src.fields.quad_ext_field import QuadExtField
from src.matrix.kernels import gemm_classical
from src.matrix.matrix import Matrix, random_matrix
from src.matrix.workspace import WINOGRAD_SCRATCH, Workspace


def _classical(a: Matrix, b: Matrix) -> Matrix:
    return gemm_classical(1, a, b, 0, Matrix.zeros(a.field, a.rows, b.cols))


class TestGemmWinograd:
    """Test cases for gemm_winograd."""

    def setup_method(self):
        """Set up test fixtures."""
        self.field = PrimeField(131071)
        self.policy = RecursionPolicy(threshold=2)

    @pytest.mark.parametrize("m,n,p", [(8, 8, 8), (16, 6, 10), (7, 9, 5), (13, 13, 13), (1, 4, 4), (4, 1, 3)])
    def test_matches_classical(self, m, n, p):
        """Test exact agreement with the classical product."""
        a = random_matrix(self.field, m, n, seed=m)
        b = random_matrix(self.field, n, p, seed=p)
        assert gemm_winograd(a, b, self.policy).equals(_classical(a, b))

    @pytest.mark.parametrize("field", [BinaryField(4), QuadExtField(7), ComplexField()])
    def test_other_fields(self, field):
        """Test other coefficient domains."""
        a = random_matrix(field, 12, 10, seed=1)
        b = random_matrix(field, 10, 6, seed=2)
        assert gemm_winograd(a, b, self.policy).equals(_classical(a, b))

    def test_one_level_count(self):
        """Test 7·12 + 15·4 = 144 operations at n = 4."""
        counter = OpCount()
        a = random_matrix(self.field, 4, 4)
        gemm_winograd(a, a, RecursionPolicy(threshold=2, max_levels=1), counter)
        assert counter.total == 144
        assert counter.products == 7

    @pytest.mark.parametrize("n,levels", [(8, 1), (8, 2), (16, 3), (32, 2)])
    def test_counts_match_model(self, n, levels):
        """Test instrumented counts against the recurrence."""
        counter = OpCount()
        a = random_matrix(self.field, n, n)
        gemm_winograd(a, a, RecursionPolicy(threshold=2, max_levels=levels), counter)
        assert counter.total == winograd_count(n, levels)

    def test_threshold_stops_recursion(self):
        """Test that a large threshold gives the classical count."""
        counter = OpCount()
        a = random_matrix(self.field, 8, 8)
        gemm_winograd(a, a, RecursionPolicy(threshold=64), counter)
        assert counter.total == 2 * 8 ** 3 - 8 ** 2

    def test_two_scratch_buffers_per_level(self):
        """Test the X and Y temporaries of one level."""
        workspace = Workspace()
        a = random_matrix(self.field, 8, 6)
        b = random_matrix(self.field, 6, 4)
        gemm_winograd(a, b, RecursionPolicy(threshold=2, max_levels=1), workspace=workspace)
        assert workspace.shapes(WINOGRAD_SCRATCH) == [(4, 3), (3, 2)]

    def test_dimension_mismatch(self):
        """Test that inner dimensions must agree."""
        with pytest.raises(DimensionMismatch):
            gemm_winograd(Matrix.zeros(self.field, 2, 3), Matrix.zeros(self.field, 2, 2))


class TestPeelOdd:
    """Test cases for peel_odd."""

    def setup_method(self):
        """Set up test fixtures."""
        self.field = PrimeField(101)
        self.policy = RecursionPolicy(threshold=2)

    @pytest.mark.parametrize("m,n,p", [(5, 5, 5), (5, 4, 4), (4, 5, 4), (4, 4, 5), (9, 7, 3)])
    def test_matches_classical(self, m, n, p):
        """Test that peeling each odd dimension is exact."""
        a = random_matrix(self.field, m, n, seed=1)
        b = random_matrix(self.field, n, p, seed=2)
        assert peel_odd(a, b, self.policy).equals(_classical(a, b))

    def test_size_one_is_classical(self):
        """Test that a dimension of size 1 gives a single classical product."""
        counter = OpCount()
        a = random_matrix(self.field, 1, 5)
        b = random_matrix(self.field, 5, 5)
        result = peel_odd(a, b, self.policy, counter)
        assert result.equals(_classical(a, b))
        assert counter.products == 1


class TestWinogradAcc:
    """Test cases for winograd_acc_into."""

    def setup_method(self):
        """Set up test fixtures."""
        self.field = PrimeField(131071)
        self.policy = RecursionPolicy(threshold=2)

    @pytest.mark.parametrize("alpha,beta", [(1, 0), (1, 1), (3, 5), (131070, 2)])
    @pytest.mark.parametrize("m,n,p", [(8, 8, 8), (16, 6, 10), (7, 9, 5), (12, 13, 11)])
    def test_matches_classical(self, alpha, beta, m, n, p):
        """Test C ← alpha·A·B + beta·C against the classical update."""
        a = random_matrix(self.field, m, n, seed=m)
        b = random_matrix(self.field, n, p, seed=p)
        c0 = random_matrix(self.field, m, p, seed=n)
        expected = gemm_classical(alpha, a, b, beta, c0.copy())
        c = c0.copy()
        winograd_acc_into(self.field, alpha, a.data, b.data, beta, c.data, self.policy, None)
        assert c.equals(expected)

    @pytest.mark.parametrize("field", [BinaryField(4), QuadExtField(7), ComplexField()])
    def test_other_fields(self, field):
        """Test other coefficient domains."""
        a = random_matrix(field, 12, 10, seed=1)
        b = random_matrix(field, 10, 6, seed=2)
        c0 = random_matrix(field, 12, 6, seed=3)
        beta = field.from_int(3)
        expected = gemm_classical(field.one, a, b, beta, c0.copy())
        c = c0.copy()
        winograd_acc_into(field, field.one, a.data, b.data, beta, c.data, self.policy, None)
        assert c.equals(expected)

    def test_accumulates_into_views(self):
        """Test that a block view of a larger matrix is updated in place."""
        a = random_matrix(self.field, 8, 8, seed=1)
        b = random_matrix(self.field, 8, 8, seed=2)
        big = random_matrix(self.field, 16, 16, seed=3)
        expected = big.copy()
        gemm_classical(2, a, b, 1, Matrix(self.field, expected.data[8:, :8]))
        winograd_acc_into(self.field, 2, a.data, b.data, 1, big.data[8:, :8], self.policy, None)
        assert big.equals(expected)

    def test_quarter_size_temporaries(self):
        """Test that no temporary as large as the output is requested."""
        workspace = Workspace()
        a = random_matrix(self.field, 16, 16, seed=1)
        c = random_matrix(self.field, 16, 16, seed=2)
        winograd_acc_into(self.field, 3, a.data, a.data, 5, c.data, self.policy, None, workspace=workspace)
        shapes = workspace.shapes(WINOGRAD_SCRATCH)
        assert shapes[:4] == [(8, 8)] * 4
        assert all(max(shape) <= 8 for shape in shapes)
