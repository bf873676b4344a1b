"""
Validation system for field specifications, matrix files and scaling files.
"""

import os
from pathlib import Path
from typing import Any, Dict, Optional

from .errors import FastSyrkError
from .interfaces import IField
from .models import ValidationResult


class ValidationSystem:
    """System for validating command inputs before any computation starts."""

    # Matrices above this many entries trigger a memory warning
    LARGE_MATRIX_ENTRIES = 1 << 26

    def validate_field_spec(self, kind: str, prime: int = 131071, k: int = 1) -> ValidationResult:
        """
        Validate a field descriptor.

        Args:
            kind: fp, fp2, gf2k or complex
            prime: Modulus for fp and fp2
            k: Extension degree for gf2k

        Returns:
            ValidationResult; metadata carries the field name, characteristic
            and the per-entry cost of applying Y
        """
        from ..fields.factory import make_field
        from ..fields.skew_orthogonal import skew_orthogonal

        warnings = []
        metadata: Dict[str, Any] = {}
        try:
            field = make_field(kind, prime, k)
        except FastSyrkError as e:
            return ValidationResult(is_valid=False, error_message=str(e), warnings=warnings)

        metadata['name'] = field.name
        metadata['characteristic'] = field.characteristic
        try:
            metadata['ycost'] = skew_orthogonal(field, 2).ycost
        except FastSyrkError as e:
            warnings.append(f"No skew-orthogonal matrix: {e}")

        if field.characteristic == 2 and kind == "fp":
            warnings.append("F_2 works, but gf2k with k = 1 uses a faster product")
        if not field.is_exact:
            warnings.append("Complex results are compared with a relative tolerance")

        return ValidationResult(is_valid=True, warnings=warnings, metadata=metadata)

    def validate_matrix_file(self, path: str, field: IField) -> ValidationResult:
        """
        Validate that a file holds a matrix over ``field`` in the text format.

        Returns:
            ValidationResult with the loaded matrix, rows and cols in its metadata
        """
        from ..matrix.matrix import Matrix

        errors = []
        warnings = []
        metadata: Dict[str, Any] = {}

        readable = self._check_readable(path, "Matrix", errors)
        if readable:
            try:
                matrix = Matrix.load(field, path)
                metadata['matrix'] = matrix
                metadata['rows'] = matrix.rows
                metadata['cols'] = matrix.cols
                if matrix.rows == 0 or matrix.cols == 0:
                    warnings.append("Matrix is empty")
                if matrix.cols > matrix.rows:
                    warnings.append("More columns than rows; the product is split into column panels")
                if matrix.rows * matrix.rows > self.LARGE_MATRIX_ENTRIES:
                    warnings.append("Output matrix is very large and may not fit in memory")
            except FastSyrkError as e:
                errors.append(f"Malformed matrix file: {e}")
            except UnicodeDecodeError:
                errors.append("Matrix file is not UTF-8 text")

        return ValidationResult(
            is_valid=len(errors) == 0,
            error_message="; ".join(errors) if errors else None,
            warnings=warnings,
            metadata=metadata
        )

    def validate_scaling_file(self, path: str, field: IField, expected_dim: Optional[int] = None) -> ValidationResult:
        """
        Validate a block-diagonal scaling file.

        Args:
            path: File with one "S d" or "T beta gamma" line per block
            field: Field the entries live in
            expected_dim: Column count of the matrix it will scale

        Returns:
            ValidationResult with the loaded scaling, block count, dimension
            and whether the scaling is purely diagonal
        """
        from ..algorithms.scaled_syrk import BlockDiagonal

        errors = []
        warnings = []
        metadata: Dict[str, Any] = {}

        if self._check_readable(path, "Scaling", errors):
            try:
                scaling = BlockDiagonal.load(field, path)
                metadata['scaling'] = scaling
                metadata['blocks'] = len(scaling.blocks)
                metadata['dim'] = scaling.dim
                metadata['diagonal'] = scaling.is_diagonal
                if expected_dim is not None and scaling.dim != expected_dim:
                    errors.append(f"Scaling has dimension {scaling.dim}, matrix has {expected_dim} columns")
                if not scaling.blocks:
                    warnings.append("Scaling file has no blocks")
            except FastSyrkError as e:
                errors.append(f"Malformed scaling file: {e}")
            except UnicodeDecodeError:
                errors.append("Scaling file is not UTF-8 text")

        return ValidationResult(
            is_valid=len(errors) == 0,
            error_message="; ".join(errors) if errors else None,
            warnings=warnings,
            metadata=metadata
        )

    def validate_system_requirements(self) -> ValidationResult:
        """
        Host information for benchmarking.

        Returns:
            ValidationResult; never invalid, warnings flag conditions that
            make timings unreliable
        """
        warnings = []
        metadata: Dict[str, Any] = {}

        try:
            import psutil
            memory = psutil.virtual_memory()
            metadata['total_memory_gb'] = memory.total // (1024**3)
            metadata['available_memory_gb'] = memory.available // (1024**3)
            metadata['cpu_count'] = psutil.cpu_count(logical=True)
            metadata['cpu_affinity'] = hasattr(psutil.Process(), 'cpu_affinity')

            if memory.available < 1024**3:
                warnings.append("Low available memory (<1GB)")
            if not metadata['cpu_affinity']:
                warnings.append("CPU pinning is not supported on this platform")
        except ImportError:
            warnings.append("Cannot determine system resources (psutil not available)")
        except Exception:
            warnings.append("Cannot determine system resources")

        return ValidationResult(is_valid=True, warnings=warnings, metadata=metadata)

    @staticmethod
    def _check_readable(path: str, label: str, errors: list) -> bool:
        if not os.path.exists(path):
            errors.append(f"{label} file does not exist: {path}")
            return False
        if not Path(path).is_file():
            errors.append(f"{label} path is not a file: {path}")
            return False
        if not os.access(path, os.R_OK):
            errors.append("File is not readable")
            return False
        return True
