"""
Tests for data models and validation system.
"""

import unittest
import tempfile
import os

from src.core.models import (
    Algorithm, FieldKind, HalfConvention, OpCount, RecursionPolicy, ValidationResult, tally
)
from src.core.validation import ValidationSystem
from src.fields.prime_field import PrimeField


class TestValidationSystem(unittest.TestCase):
    """Test cases for ValidationSystem class."""

    def setUp(self):
        """Set up test fixtures."""
        self.validation_system = ValidationSystem()
        self.temp_dir = tempfile.mkdtemp()
        self.field = PrimeField(7)

    def tearDown(self):
        """Clean up test fixtures."""
        import shutil
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def create_temp_file(self, filename: str, content: str) -> str:
        """Create a temporary file for testing."""
        filepath = os.path.join(self.temp_dir, filename)
        with open(filepath, 'w', encoding='utf-8') as f:
            f.write(content)
        return filepath

    def test_validate_field_spec_prime(self):
        """Test metadata of a prime field."""
        result = self.validation_system.validate_field_spec("fp", 7)
        self.assertTrue(result.is_valid)
        self.assertEqual(result.metadata['name'], "F_7")
        self.assertEqual(result.metadata['characteristic'], 7)
        self.assertEqual(result.metadata['ycost'], 3)

    def test_validate_field_spec_invalid(self):
        """Test a composite modulus."""
        result = self.validation_system.validate_field_spec("fp", 15)
        self.assertFalse(result.is_valid)
        self.assertIsNotNone(result.error_message)

    def test_validate_field_spec_unknown_kind(self):
        """Test an unknown field descriptor."""
        result = self.validation_system.validate_field_spec("quaternion")
        self.assertFalse(result.is_valid)
        self.assertIn("Unknown field kind", result.error_message)

    def test_validate_field_spec_warnings(self):
        """Test the F_2 and complex warnings."""
        result = self.validation_system.validate_field_spec("fp", 2)
        self.assertTrue(result.is_valid)
        self.assertTrue(any("gf2k" in w for w in result.warnings))

        result = self.validation_system.validate_field_spec("complex")
        self.assertTrue(result.is_valid)
        self.assertEqual(result.metadata['ycost'], 0)
        self.assertTrue(any("tolerance" in w for w in result.warnings))

    def test_validate_matrix_file(self):
        """Test a well-formed matrix file."""
        path = self.create_temp_file("a.txt", "2 3\n1 2 3\n4 5 6\n")
        result = self.validation_system.validate_matrix_file(path, self.field)
        self.assertTrue(result.is_valid)
        self.assertEqual(result.metadata['rows'], 2)
        self.assertEqual(result.metadata['cols'], 3)
        self.assertEqual(result.metadata['matrix'].shape, (2, 3))
        self.assertTrue(any("column panels" in w for w in result.warnings))

    def test_validate_matrix_file_malformed(self):
        """Test non-canonical entries and wrong row counts."""
        for content in ["2 2\n1 2\n", "1 2\n1 9\n", "x y\n"]:
            path = self.create_temp_file("bad.txt", content)
            result = self.validation_system.validate_matrix_file(path, self.field)
            self.assertFalse(result.is_valid, content)
            self.assertIn("Malformed matrix file", result.error_message)

    def test_validate_matrix_file_nonexistent(self):
        """Test validation of non-existent files."""
        result = self.validation_system.validate_matrix_file("/nonexistent/a.txt", self.field)
        self.assertFalse(result.is_valid)
        self.assertIn("does not exist", result.error_message)

    def test_validate_matrix_file_directory(self):
        """Test a directory passed as a file."""
        result = self.validation_system.validate_matrix_file(self.temp_dir, self.field)
        self.assertFalse(result.is_valid)
        self.assertIn("not a file", result.error_message)

    def test_validate_scaling_file(self):
        """Test a block-diagonal scaling file."""
        path = self.create_temp_file("b.txt", "S 3\nT 1 0\n")
        result = self.validation_system.validate_scaling_file(path, self.field, expected_dim=3)
        self.assertTrue(result.is_valid)
        self.assertEqual(result.metadata['blocks'], 2)
        self.assertEqual(result.metadata['scaling'].dim, 3)
        self.assertFalse(result.metadata['diagonal'])

    def test_validate_scaling_file_dimension(self):
        """Test a scaling whose size differs from the matrix."""
        path = self.create_temp_file("b.txt", "S 3\nS 1\n")
        result = self.validation_system.validate_scaling_file(path, self.field, expected_dim=3)
        self.assertFalse(result.is_valid)
        self.assertIn("dimension 2", result.error_message)

    def test_validate_scaling_file_malformed(self):
        """Test a zero off-diagonal entry."""
        path = self.create_temp_file("b.txt", "T 0 1\n")
        result = self.validation_system.validate_scaling_file(path, self.field)
        self.assertFalse(result.is_valid)
        self.assertIn("Malformed scaling file", result.error_message)

    def test_validate_scaling_file_empty(self):
        """Test an empty scaling file."""
        path = self.create_temp_file("b.txt", "# nothing\n")
        result = self.validation_system.validate_scaling_file(path, self.field)
        self.assertTrue(result.is_valid)
        self.assertIn("Scaling file has no blocks", result.warnings)

    def test_validate_system_requirements(self):
        """Test system requirements validation."""
        result = self.validation_system.validate_system_requirements()
        self.assertTrue(result.is_valid)
        self.assertIsInstance(result.warnings, list)


class TestDataModelValidation(unittest.TestCase):
    """Test cases for data model validation."""

    def test_recursion_policy_valid(self):
        """Test valid recursion policies."""
        policy = RecursionPolicy(threshold=2, max_levels=3)
        self.assertTrue(policy.validate().is_valid)
        self.assertEqual(policy.initial_budget(), 3)
        self.assertEqual(RecursionPolicy.descend(3), 2)
        self.assertIsNone(RecursionPolicy.descend(None))

    def test_recursion_policy_invalid(self):
        """Test rejected thresholds and level counts."""
        with self.assertRaises(ValueError):
            RecursionPolicy(threshold=1)
        with self.assertRaises(ValueError):
            RecursionPolicy(max_levels=-1)

    def test_recursion_policy_large_threshold_warning(self):
        """Test the warning for very large thresholds."""
        result = RecursionPolicy(threshold=8192).validate()
        self.assertTrue(result.is_valid)
        self.assertEqual(len(result.warnings), 1)

    def test_recursion_policy_allows(self):
        """Test the recursion decision."""
        policy = RecursionPolicy(threshold=4, max_levels=1)
        self.assertTrue(policy.allows(1, 8, 4))
        self.assertFalse(policy.allows(1, 8, 3))
        self.assertFalse(policy.allows(0, 8, 8))
        self.assertTrue(RecursionPolicy(threshold=4).allows(None, 4, 4))

    def test_recursion_policy_serialization(self):
        """Test dictionary round trip."""
        policy = RecursionPolicy(threshold=16, max_levels=2)
        self.assertEqual(RecursionPolicy.from_dict(policy.to_dict()), policy)
        self.assertEqual(RecursionPolicy.from_dict({}), RecursionPolicy())

    def test_op_count(self):
        """Test recording and merging operation counts."""
        counter = OpCount()
        counter.record(mults=3, adds=2)
        tally(counter, adds=1, products=1)
        tally(None, mults=100)
        self.assertEqual(counter.total, 6)
        merged = counter + OpCount(mults=1)
        self.assertEqual(merged.to_dict(), {'mults': 4, 'adds': 3, 'products': 1, 'total': 7})
        self.assertEqual(counter.mults, 3)

    def test_validation_result_defaults(self):
        """Test that warnings default to an empty list."""
        result = ValidationResult(is_valid=True)
        self.assertEqual(result.warnings, [])
        self.assertIsNone(result.metadata)

    def test_enum_values(self):
        """Test command-line spellings of the enumerations."""
        self.assertEqual(FieldKind("gf2k"), FieldKind.BINARY)
        self.assertEqual(HalfConvention.SQUARE_HALF.value, "square_half")
        self.assertEqual(Algorithm("fast_syrk"), Algorithm.FAST_SYRK)


if __name__ == '__main__':
    unittest.main()
