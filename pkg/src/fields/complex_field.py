"""
Complex doubles as a (floating point) coefficient domain.
"""

from typing import Any, Optional

import numpy as np

from ..core.errors import FieldError
from ..core.interfaces import IField, Shape

DEFAULT_RTOL = 1e-9


class ComplexField(IField):
    """complex128 arithmetic; comparisons use a relative tolerance."""

    def __init__(self, rtol: float = DEFAULT_RTOL):
        self._rtol = rtol

    @property
    def name(self) -> str:
        return "C"

    @property
    def characteristic(self) -> int:
        return 0

    @property
    def order(self) -> Optional[int]:
        return None

    @property
    def dtype(self) -> np.dtype:
        return np.dtype(np.complex128)

    @property
    def is_exact(self) -> bool:
        return False

    @property
    def rtol(self) -> float:
        return self._rtol

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ComplexField)

    def __hash__(self) -> int:
        return hash("complex")

    def from_int(self, value: int) -> complex:
        return complex(value)

    def add(self, x: Any, y: Any, out: Optional[np.ndarray] = None) -> Any:
        return np.add(x, y, out=out) if out is not None else np.add(x, y)

    def sub(self, x: Any, y: Any, out: Optional[np.ndarray] = None) -> Any:
        return np.subtract(x, y, out=out) if out is not None else np.subtract(x, y)

    def mul(self, x: Any, y: Any, out: Optional[np.ndarray] = None) -> Any:
        return np.multiply(x, y, out=out) if out is not None else np.multiply(x, y)

    def neg(self, x: Any) -> Any:
        return np.negative(x)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.asarray(a, dtype=np.complex128) @ np.asarray(b, dtype=np.complex128)

    def conj(self, x: Any) -> Any:
        return np.conjugate(x)

    def inv(self, x: Any) -> complex:
        if x == 0:
            raise FieldError("Zero has no multiplicative inverse")
        return 1 / complex(x)

    def pow(self, x: Any, exponent: int) -> complex:
        return complex(x) ** exponent

    def is_square(self, x: Any) -> bool:
        return True

    def sqrt(self, x: Any) -> complex:
        """Principal square root."""
        return complex(np.sqrt(complex(x)))

    def random(self, shape: Shape, rng: np.random.Generator) -> np.ndarray:
        real = rng.uniform(-1.0, 1.0, size=shape)
        imag = rng.uniform(-1.0, 1.0, size=shape)
        return real + 1j * imag

    def contains(self, values: np.ndarray) -> bool:
        values = np.asarray(values)
        return bool(np.issubdtype(values.dtype, np.complexfloating) and np.all(np.isfinite(values)))

    def format_element(self, x: Any) -> str:
        x = complex(x)
        return f"{x.real!r},{x.imag!r}"

    def parse_element(self, token: str) -> complex:
        try:
            real, imag = token.split(",")
            return complex(float(real), float(imag))
        except ValueError as e:
            raise FieldError(f"Cannot parse complex entry '{token}': {e}")

    def equal(self, a: np.ndarray, b: np.ndarray) -> bool:
        """Equality up to ``rtol`` relative to the largest magnitude."""
        a = np.asarray(a)
        b = np.asarray(b)
        if a.shape != b.shape:
            return False
        scale = max(float(np.max(np.abs(a), initial=0.0)), float(np.max(np.abs(b), initial=0.0)), 1.0)
        return bool(np.max(np.abs(a - b), initial=0.0) <= self._rtol * scale)
