"""
Tests for the analytic operation-count model and its agreement with the instrumented algorithms.
"""

from fractions import Fraction
from pathlib import Path

import pytest

from src.analysis.opcount import (
    CountModel, classical_gemm_count, classical_syrk_count, count, crossover,
    fast_syrk_count, instrumented_count, syrk_dc_count, table5, table5_csv, winograd_count
)
from src.core.errors import InvalidModel
from src.core.models import Algorithm, HalfConvention
from src.fields.binary_field import BinaryField
from src.fields.prime_field import PrimeField

GOLDEN = Path(__file__).parent / "data" / "table5.csv"

# One field per Y cost class
FIELDS_BY_YCOST = {0: BinaryField(3), 1: PrimeField(13), 2: PrimeField(11), 3: PrimeField(7)}


class TestClosedForms:
    """Test cases for the individual recurrences."""

    def test_classical_syrk_row(self):
        """Test the classical row of the grid."""
        assert [classical_syrk_count(n) for n in (4, 8, 16, 32, 64, 128)] == \
            [70, 540, 4216, 33264, 264160, 2105280]

    def test_classical_gemm(self):
        """Test 2n³ - n²."""
        assert classical_gemm_count(4) == 112
        assert classical_gemm_count(1) == 1

    def test_winograd(self):
        """Test the Winograd recurrence."""
        assert winograd_count(4, 0) == 112
        assert winograd_count(4, 1) == 144
        assert winograd_count(128, 4) == 2991360

    @pytest.mark.parametrize("y,expected", [(0, 81), (1, 89), (2, 97), (3, 105)])
    def test_fast_rows_at_four(self, y, expected):
        """Test one level at n = 4 with square-half additions."""
        assert count(CountModel(Algorithm.FAST_SYRK, 4, 1, y, half_convention=HalfConvention.SQUARE_HALF)) == expected

    @pytest.mark.parametrize("n,rec,y,expected", [
        (8, 1, 0, 554), (16, 1, 0, 4020), (8, 2, 0, 651), (16, 2, 0, 4190),
        (16, 2, 1, 4414), (16, 3, 0, 4929), (32, 2, 1, 30236), (128, 4, 1, 1522940),
    ])
    def test_fast_rows(self, n, rec, y, expected):
        """Test tabulated fast-product cells."""
        assert count(CountModel(Algorithm.FAST_SYRK, n, rec, y, half_convention=HalfConvention.SQUARE_HALF)) == expected

    @pytest.mark.parametrize("n,rec,expected", [(4, 1, 70), (8, 1, 540), (8, 2, 604), (16, 3, 5048)])
    def test_divide_and_conquer_rows(self, n, rec, expected):
        """Test tabulated divide-and-conquer cells."""
        assert count(CountModel(Algorithm.SYRK_DC, n, rec)) == expected
        assert syrk_dc_count(n, rec) == expected

    def test_triangular_hand_count(self):
        """Test one level at n = 4 with triangular half additions."""
        assert count(CountModel(Algorithm.FAST_SYRK, 4, 1, 1)) == 92

    def test_square_half_fraction(self):
        """Test that odd half sizes give exact fractions."""
        assert fast_syrk_count(2, 1, 0, HalfConvention.SQUARE_HALF) == Fraction(25, 2)

    def test_leading_factor(self):
        """Test that four levels reach about half the cost of Winograd."""
        fast = count(CountModel(Algorithm.FAST_SYRK, 128, 4, 1, half_convention=HalfConvention.SQUARE_HALF))
        ratio = fast / winograd_count(128, 4)
        assert 0.50 <= ratio <= 0.52


class TestCountModelValidation:
    """Test cases for invalid models."""

    @pytest.mark.parametrize("model", [
        CountModel(Algorithm.CLASSICAL_SYRK, 12),
        CountModel(Algorithm.CLASSICAL_SYRK, 0),
        CountModel(Algorithm.SYRK_DC, 8, -1),
        CountModel(Algorithm.FAST_SYRK, 8, 1, 4),
        CountModel(Algorithm.FAST_SYRK, 4, 2),
        CountModel(Algorithm.WINOGRAD_GEMM, 4, 3),
        CountModel(Algorithm.CLASSICAL_GEMM, 8, 1),
    ])
    def test_invalid(self, model):
        """Test InvalidModel for unsupported combinations."""
        with pytest.raises(InvalidModel):
            count(model)


class TestTable:
    """Test cases for the full grid and its CSV form."""

    def test_golden_csv(self):
        """Test the grid against the checked-in file."""
        assert table5_csv() == GOLDEN.read_text(encoding='utf-8')

    def test_row_cells(self):
        """Test individual rows of the grid."""
        rows = table5()
        g1 = [row.count for row in rows if row.algorithm == "G1" and row.rec == 1]
        assert g1 == [89, 586, 4148, 30952, 238544, 1871776]
        g34 = [row.count for row in rows if row.algorithm == "G3" and row.rec == 4]
        assert g34[-1] == 1567740

    def test_skips_unsupported_sizes(self):
        """Test that deep rows start at the smallest supported size."""
        rows = table5()
        assert min(row.n for row in rows if row.algorithm == "G0" and row.rec == 4) == 32
        assert min(row.n for row in rows if row.algorithm == "Syrk" and row.rec == 4) == 16

    def test_restricted_sizes(self):
        """Test a grid over fewer sizes."""
        rows = table5([4, 8])
        assert {row.n for row in rows} == {4, 8}
        assert table5_csv(rows).splitlines()[0] == "algorithm,rec,n,count"


class TestCrossover:
    """Test cases for the break-even size."""

    @pytest.mark.parametrize("y,expected", [(0, 16), (1, 16), (3, 32)])
    def test_one_level(self, y, expected):
        """Test the size where one fast level first wins."""
        assert crossover(y) == expected

    def test_limit(self):
        """Test None when the limit is too small."""
        assert crossover(3, limit=16) is None


class TestInstrumentedCounts:
    """Test cases reconciling executed operations with the model."""

    @pytest.mark.parametrize("y", [0, 1, 2, 3])
    @pytest.mark.parametrize("n", [4, 8, 16, 32])
    @pytest.mark.parametrize("rec", [1, 2])
    def test_fast_syrk(self, y, n, rec):
        """Test exact agreement under triangular half additions."""
        if n < 2 ** (rec + 1):
            pytest.skip("not enough levels at this size")
        measured = instrumented_count(FIELDS_BY_YCOST[y], n, rec)
        assert measured.total == fast_syrk_count(n, rec, y)

    def test_hand_count(self):
        """Test the single-level count at n = 4 for y = 1."""
        assert instrumented_count(PrimeField(5), 4, 1).total == 92

    @pytest.mark.parametrize("n", [1, 2, 4, 8, 16, 32, 64])
    def test_classical_syrk(self, n):
        """Test the classical kernel count."""
        measured = instrumented_count(PrimeField(131071), n, 0, Algorithm.CLASSICAL_SYRK)
        assert measured.total == classical_syrk_count(n)

    @pytest.mark.parametrize("n,rec", [(4, 1), (8, 2), (16, 3)])
    def test_divide_and_conquer(self, n, rec):
        """Test the divide-and-conquer count."""
        assert instrumented_count(PrimeField(131071), n, rec, Algorithm.SYRK_DC).total == syrk_dc_count(n, rec)

    @pytest.mark.parametrize("n,rec", [(4, 1), (16, 2), (32, 3)])
    def test_winograd(self, n, rec):
        """Test the Winograd count."""
        assert instrumented_count(PrimeField(131071), n, rec, Algorithm.WINOGRAD_GEMM).total == winograd_count(n, rec)

    def test_classical_gemm(self):
        """Test the classical general product count."""
        assert instrumented_count(PrimeField(131071), 8, 0, Algorithm.CLASSICAL_GEMM).total == classical_gemm_count(8)
