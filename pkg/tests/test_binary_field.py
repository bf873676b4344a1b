"""
Tests for binary fields GF(2^k).
"""

import pytest
import numpy as np

from src.core.errors import FieldError
from src.fields.binary_field import BinaryField, PRIMITIVE_POLYNOMIALS, poly_mulmod


class TestBinaryField:
    """Test cases for BinaryField class."""

    def setup_method(self):
        """Set up test fixtures."""
        self.gf4 = BinaryField(2)
        self.gf16 = BinaryField(4)
        self.rng = np.random.default_rng(1)

    @pytest.mark.parametrize("k", [0, 17])
    def test_degree_out_of_range(self, k):
        """Test that unsupported degrees are rejected."""
        with pytest.raises(FieldError):
            BinaryField(k)

    def test_every_table_polynomial_is_primitive(self):
        """Test that the tables build for every supported degree."""
        for k in PRIMITIVE_POLYNOMIALS:
            field = BinaryField(k)
            assert field.order == 1 << k
            assert field.characteristic == 2

    def test_gf4_multiplication(self):
        """Test x·x = x + 1 in GF(4)."""
        assert self.gf4.mul(2, 2) == 3
        assert self.gf4.mul(2, 3) == 1
        assert self.gf4.mul(0, 3) == 0

    def test_addition_is_self_inverse(self):
        """Test x + x = 0 and sub = add."""
        x = self.gf16.random((5, 5), self.rng)
        assert not np.any(self.gf16.add(x, x))
        assert np.array_equal(self.gf16.sub(x, 3), self.gf16.add(x, 3))

    def test_sqrt_is_frobenius(self):
        """Test that sqrt(x) = x^(2^(k-1)) squares back to x."""
        assert self.gf4.sqrt(2) == 3
        for k in (1, 2, 4, 8):
            field = BinaryField(k)
            for x in range(min(field.order, 64)):
                r = field.sqrt(x)
                assert field.mul(r, r) == x

    def test_inverse(self):
        """Test x·inv(x) = 1 for every nonzero element of GF(16)."""
        for x in range(1, 16):
            assert self.gf16.mul(x, self.gf16.inv(x)) == 1
        with pytest.raises(FieldError):
            self.gf16.inv(0)

    def test_mul_matches_naive_product(self):
        """Test table multiplication against shift-and-add."""
        field = BinaryField(8)
        for x, y in self.rng.integers(0, 256, size=(100, 2)):
            assert field.mul(x, y) == poly_mulmod(int(x), int(y), field.modulus, 8)

    def test_matmul_matches_elementwise_definition(self):
        """Test the matrix product against sums of elementwise products."""
        field = self.gf16
        a = field.random((4, 6), self.rng)
        b = field.random((6, 3), self.rng)
        expected = np.zeros((4, 3), dtype=np.int64)
        for l in range(6):
            expected ^= field.mul(a[:, l:l + 1], b[l:l + 1, :])
        assert np.array_equal(field.matmul(a, b), expected)

    def test_gf2_matmul(self):
        """Test the parity shortcut for k = 1."""
        field = BinaryField(1)
        a = np.array([[1, 1], [0, 1]])
        assert field.matmul(a, a).tolist() == [[1, 0], [0, 1]]

    def test_from_int_reduces_mod_two(self):
        """Test the image of integers in characteristic 2."""
        assert self.gf16.from_int(3) == 1
        assert self.gf16.minus_one == 1
