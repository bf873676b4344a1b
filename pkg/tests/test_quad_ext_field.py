"""
Tests for quadratic extension fields and the complex domain.
"""

import pytest
import numpy as np

from src.core.errors import FieldError, NonResidue
from src.fields.complex_field import ComplexField
from src.fields.factory import make_field
from src.fields.quad_ext_field import QuadExtField


class TestQuadExtField:
    """Test cases for QuadExtField class."""

    def setup_method(self):
        """Set up test fixtures."""
        self.f49 = QuadExtField(7)
        self.rng = np.random.default_rng(2)

    def test_requires_odd_prime(self):
        """Test that p = 2 is refused."""
        with pytest.raises(FieldError):
            QuadExtField(2)

    def test_encoding(self):
        """Test a + b·x encoded as a + b·p."""
        z = self.f49.element(3, 5)
        assert z == 3 + 5 * 7
        a, b = self.f49.coordinates(z)
        assert (int(a), int(b)) == (3, 5)

    def test_x_squared_is_ns(self):
        """Test x² = ns with ns the least non-residue."""
        x = self.f49.element(0, 1)
        assert self.f49.ns == 3
        assert self.f49.mul(x, x) == 3

    def test_conjugate_is_involution(self):
        """Test conj(conj(z)) = z and z·conj(z) in the base field."""
        for z in self.f49.random((20,), self.rng):
            assert self.f49.conj(self.f49.conj(z)) == z
            norm = self.f49.mul(z, self.f49.conj(z))
            assert 0 <= norm < 7

    def test_conjugate_is_frobenius(self):
        """Test conj(z) = z^p."""
        for z in self.f49.random((20,), self.rng):
            assert self.f49.conj(z) == self.f49.pow(int(z), 7)

    def test_inverse(self):
        """Test z·inv(z) = 1."""
        for z in range(1, 49):
            assert self.f49.mul(z, self.f49.inv(z)) == 1

    def test_every_base_element_is_square(self):
        """Test that the base field embeds into the squares."""
        for k in range(7):
            r = self.f49.sqrt(k)
            assert self.f49.mul(r, r) == k

    def test_sqrt_of_non_square(self):
        """Test NonResidue for a non-square of the extension."""
        non_squares = [z for z in range(1, 49) if not self.f49.is_square(z)]
        assert len(non_squares) == 24
        with pytest.raises(NonResidue):
            self.f49.sqrt(non_squares[0])

    def test_matmul_matches_scalar_products(self):
        """Test the matrix product against scalar multiply-add."""
        f = self.f49
        a = f.random((3, 4), self.rng)
        b = f.random((4, 2), self.rng)
        result = f.matmul(a, b)
        for i in range(3):
            for j in range(2):
                acc = 0
                for l in range(4):
                    acc = f.add(acc, f.mul(a[i, l], b[l, j]))
                assert result[i, j] == acc


class TestComplexField:
    """Test cases for ComplexField class."""

    def setup_method(self):
        """Set up test fixtures."""
        self.field = ComplexField()

    def test_tolerance(self):
        """Test relative comparison."""
        a = np.array([[1 + 1j, 2.0]])
        assert self.field.equal(a, a * (1 + 1e-12))
        assert not self.field.equal(a, a * (1 + 1e-6))

    def test_text_tokens(self):
        """Test the re,im element format."""
        token = self.field.format_element(1.5 - 2j)
        assert self.field.parse_element(token) == 1.5 - 2j
        with pytest.raises(FieldError):
            self.field.parse_element("1.5")


class TestFieldFactory:
    """Test cases for make_field."""

    def test_kinds(self):
        """Test each field descriptor."""
        assert make_field("fp", 13).name == "F_13"
        assert make_field("fp2", 7).name == "F_7^2"
        assert make_field("gf2k", k=4).name == "GF(2^4)"
        assert make_field("complex").name == "C"

    def test_unknown_kind(self):
        """Test that an unknown descriptor raises FieldError."""
        with pytest.raises(FieldError):
            make_field("fq")
