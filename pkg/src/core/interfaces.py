"""
Base interfaces and abstract classes for core components.
"""

from abc import ABC, abstractmethod
from typing import Any, Optional, Tuple, Union

import numpy as np

Shape = Union[int, Tuple[int, ...]]


class IField(ABC):
    """Interface for a coefficient domain.

    Elements are stored in numpy arrays of :attr:`dtype`; every array
    operation also accepts scalars. Fields are immutable after
    construction and can be shared freely.
    """

    @property
    @abstractmethod
    def name(self) -> str:
        """Short human readable name, e.g. ``F_131071``."""
        pass

    @property
    @abstractmethod
    def characteristic(self) -> int:
        """Field characteristic (0 for the complex numbers)."""
        pass

    @property
    @abstractmethod
    def order(self) -> Optional[int]:
        """Number of elements, None for infinite fields."""
        pass

    @property
    @abstractmethod
    def dtype(self) -> np.dtype:
        """numpy dtype of element storage."""
        pass

    @property
    def is_exact(self) -> bool:
        """False for floating point domains."""
        return True

    @property
    def zero(self) -> Any:
        return self.from_int(0)

    @property
    def one(self) -> Any:
        return self.from_int(1)

    @property
    def minus_one(self) -> Any:
        return self.neg(self.one)

    def zeros(self, shape: Shape) -> np.ndarray:
        """Zero-filled element array."""
        return np.zeros(shape, dtype=self.dtype)

    @abstractmethod
    def from_int(self, value: int) -> Any:
        """Image of an integer under the canonical ring map."""
        pass

    def normalize(self, values: np.ndarray) -> np.ndarray:
        """Reduce raw integer input to canonical form where that is meaningful."""
        return values

    @abstractmethod
    def add(self, x: Any, y: Any, out: Optional[np.ndarray] = None) -> Any:
        """Elementwise sum."""
        pass

    @abstractmethod
    def sub(self, x: Any, y: Any, out: Optional[np.ndarray] = None) -> Any:
        """Elementwise difference."""
        pass

    @abstractmethod
    def mul(self, x: Any, y: Any, out: Optional[np.ndarray] = None) -> Any:
        """Elementwise (or scalar-broadcast) product."""
        pass

    @abstractmethod
    def neg(self, x: Any) -> Any:
        """Elementwise additive inverse."""
        pass

    @abstractmethod
    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Exact classical matrix product."""
        pass

    def conj(self, x: Any) -> Any:
        """Field conjugation; identity unless the field has one."""
        return x

    @abstractmethod
    def inv(self, x: Any) -> Any:
        """Multiplicative inverse of a nonzero scalar."""
        pass

    @abstractmethod
    def pow(self, x: Any, exponent: int) -> Any:
        """Scalar exponentiation."""
        pass

    @abstractmethod
    def is_square(self, x: Any) -> bool:
        """True when the scalar has a square root in the field."""
        pass

    @abstractmethod
    def sqrt(self, x: Any) -> Any:
        """Canonical square root of a scalar.

        Raises:
            NonResidue: If ``x`` is not a square
        """
        pass

    @abstractmethod
    def random(self, shape: Shape, rng: np.random.Generator) -> np.ndarray:
        """Uniformly random elements drawn from ``rng``."""
        pass

    @abstractmethod
    def contains(self, values: np.ndarray) -> bool:
        """True when every entry is a canonical element."""
        pass

    @abstractmethod
    def format_element(self, x: Any) -> str:
        """Text token for the matrix file format."""
        pass

    @abstractmethod
    def parse_element(self, token: str) -> Any:
        """Inverse of :meth:`format_element`."""
        pass

    def equal(self, a: np.ndarray, b: np.ndarray) -> bool:
        """Exact equality; inexact fields override with a tolerance."""
        return bool(np.array_equal(a, b))

    def __repr__(self) -> str:
        return self.name
