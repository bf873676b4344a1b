"""
Binary fields GF(2^k), 1 <= k <= 16, built on log/antilog tables.
"""

import logging
from typing import Any, Dict, Optional, Tuple

import numpy as np

from ..core.errors import FieldError
from ..core.interfaces import IField, Shape

logger = logging.getLogger(__name__)

# Primitive reduction polynomials as exponent lists; the same table as the
# classic pyfinite one. x is a generator of the multiplicative group for all.
PRIMITIVE_POLYNOMIALS: Dict[int, Tuple[int, ...]] = {
    1: (1, 0),
    2: (2, 1, 0),
    3: (3, 1, 0),
    4: (4, 1, 0),
    5: (5, 2, 0),
    6: (6, 4, 3, 1, 0),
    7: (7, 1, 0),
    8: (8, 4, 3, 2, 0),
    9: (9, 4, 0),
    10: (10, 6, 5, 3, 2, 1, 0),
    11: (11, 2, 0),
    12: (12, 7, 6, 5, 3, 1, 0),
    13: (13, 4, 3, 1, 0),
    14: (14, 7, 5, 3, 0),
    15: (15, 5, 4, 2, 0),
    16: (16, 5, 3, 2, 0),
}


def poly_from_exponents(exponents: Tuple[int, ...]) -> int:
    """Bit-packed polynomial over F_2 from its exponent list."""
    value = 0
    for e in exponents:
        value |= 1 << e
    return value


def poly_mulmod(a: int, b: int, modulus: int, degree: int) -> int:
    """Naive shift-and-add product of two field elements."""
    result = 0
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a <<= 1
        if a >> degree & 1:
            a ^= modulus
    return result


class BinaryField(IField):
    """GF(2^k) with elements encoded as integers whose bits are coefficients."""

    def __init__(self, k: int):
        """
        Initialize the binary field.

        Args:
            k: Extension degree, 1 <= k <= 16

        Raises:
            FieldError: If k is out of range
        """
        k = int(k)
        if k not in PRIMITIVE_POLYNOMIALS:
            raise FieldError(f"Extension degree must be in 1..16, got {k}")
        self._k = k
        self._q = 1 << k
        self._modulus = poly_from_exponents(PRIMITIVE_POLYNOMIALS[k])
        self._exp, self._log = self._build_tables()

    def _build_tables(self) -> Tuple[np.ndarray, np.ndarray]:
        """Antilog table doubled in length so log sums need no reduction."""
        group = self._q - 1
        exp = np.zeros(2 * group, dtype=np.int64)
        log = np.zeros(self._q, dtype=np.int64)
        x = 1
        for i in range(group):
            exp[i] = x
            log[x] = i
            x = poly_mulmod(x, 2, self._modulus, self._k)
        if x != 1:
            raise FieldError(f"Reduction polynomial for k={self._k} is not primitive")
        exp[group:] = exp[:group]
        logger.debug(f"Built log tables for GF(2^{self._k})")
        return exp, log

    @property
    def k(self) -> int:
        return self._k

    @property
    def modulus(self) -> int:
        return self._modulus

    @property
    def name(self) -> str:
        return f"GF(2^{self._k})"

    @property
    def characteristic(self) -> int:
        return 2

    @property
    def order(self) -> Optional[int]:
        return self._q

    @property
    def dtype(self) -> np.dtype:
        return np.dtype(np.int64)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BinaryField) and other._k == self._k

    def __hash__(self) -> int:
        return hash(("gf2k", self._k))

    @staticmethod
    def _scalar(result: np.ndarray) -> Any:
        return result[()] if result.ndim == 0 else result

    # Arithmetic

    def from_int(self, value: int) -> int:
        return int(value) & 1

    def add(self, x: Any, y: Any, out: Optional[np.ndarray] = None) -> Any:
        return np.bitwise_xor(x, y, out=out) if out is not None else np.bitwise_xor(x, y)

    def sub(self, x: Any, y: Any, out: Optional[np.ndarray] = None) -> Any:
        return self.add(x, y, out=out)

    def neg(self, x: Any) -> Any:
        return np.array(x, dtype=np.int64, copy=True)[()]

    def mul(self, x: Any, y: Any, out: Optional[np.ndarray] = None) -> Any:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        result = np.where((x == 0) | (y == 0), 0, self._exp[self._log[x] + self._log[y]])
        if out is not None:
            out[...] = result
            return out
        return self._scalar(result)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self._k == 1:
            return (a @ b) & 1
        result = self.zeros((a.shape[0], b.shape[1]))
        log_a, log_b = self._log[a], self._log[b]
        zero_a, zero_b = a == 0, b == 0
        for l in range(a.shape[1]):
            term = self._exp[log_a[:, l:l + 1] + log_b[l:l + 1, :]]
            term[zero_a[:, l:l + 1] | zero_b[l:l + 1, :]] = 0
            result ^= term
        return result

    def inv(self, x: Any) -> int:
        x = int(x)
        if x == 0:
            raise FieldError("Zero has no multiplicative inverse")
        group = self._q - 1
        return int(self._exp[(group - self._log[x]) % group])

    def pow(self, x: Any, exponent: int) -> int:
        x = int(x)
        if exponent < 0:
            x, exponent = self.inv(x), -exponent
        if x == 0:
            return 1 if exponent == 0 else 0
        group = self._q - 1
        return int(self._exp[(int(self._log[x]) * exponent) % group])

    def is_square(self, x: Any) -> bool:
        return True

    def sqrt(self, x: Any) -> int:
        """Frobenius square root x^(2^(k-1))."""
        return self.pow(x, 1 << (self._k - 1))

    # Storage

    def random(self, shape: Shape, rng: np.random.Generator) -> np.ndarray:
        return rng.integers(0, self._q, size=shape, dtype=np.int64)

    def contains(self, values: np.ndarray) -> bool:
        values = np.asarray(values)
        if not np.issubdtype(values.dtype, np.integer):
            return False
        return bool(np.all((values >= 0) & (values < self._q)))

    def format_element(self, x: Any) -> str:
        return str(int(x))

    def parse_element(self, token: str) -> int:
        value = int(token)
        if not 0 <= value < self._q:
            raise FieldError(f"{value} is not an element of {self.name}")
        return value
