"""
Prime fields F_p with p < 2^31, residue classification and modular square roots.
"""

import logging
from functools import cached_property
from itertools import count
from typing import Any, Optional

import numpy as np

from ..core.errors import FieldError, NonResidue
from ..core.interfaces import IField, Shape

logger = logging.getLogger(__name__)

MAX_MODULUS = 1 << 31
INT64_MAX = (1 << 63) - 1
LIMB_BITS = 16


def is_prime(n: int) -> bool:
    """Deterministic primality test by trial division over 6k ± 1."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def _chunked_product(a: np.ndarray, b: np.ndarray, p: int, bound: int) -> np.ndarray:
    """a·b mod p, splitting the inner dimension so partial sums stay below 2^63."""
    inner = a.shape[1]
    chunk = max(1, INT64_MAX // max(bound, 1))
    if chunk >= inner:
        return (a @ b) % p
    result = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for start in range(0, inner, chunk):
        stop = min(start + chunk, inner)
        result += (a[:, start:stop] @ b[start:stop, :]) % p
        result %= p
    return result


class PrimeField(IField):
    """The field of residues modulo a prime p < 2^31.

    Elements are canonical residues in [0, p) stored as int64, so every
    product of two elements fits in a signed 64-bit integer.
    """

    def __init__(self, p: int):
        """
        Initialize the prime field.

        Args:
            p: Prime modulus, 2 <= p < 2^31

        Raises:
            FieldError: If p is out of range or composite
        """
        p = int(p)
        if not 2 <= p < MAX_MODULUS:
            raise FieldError(f"Modulus must satisfy 2 <= p < 2^31, got {p}")
        if not is_prime(p):
            raise FieldError(f"Modulus {p} is not prime")
        self._p = p

    @property
    def p(self) -> int:
        return self._p

    @property
    def name(self) -> str:
        return f"F_{self._p}"

    @property
    def characteristic(self) -> int:
        return self._p

    @property
    def order(self) -> Optional[int]:
        return self._p

    @property
    def dtype(self) -> np.dtype:
        return np.dtype(np.int64)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other._p == self._p

    def __hash__(self) -> int:
        return hash(("fp", self._p))

    @cached_property
    def lqnr(self) -> int:
        """Least quadratic non-residue, computed once per field."""
        if self._p == 2:
            raise FieldError("F_2 has no quadratic non-residue")
        for s in count(2):
            if self.legendre(s) == -1:
                logger.debug(f"Least quadratic non-residue of {self.name} is {s}")
                return s
        raise AssertionError("unreachable")

    # Arithmetic

    def from_int(self, value: int) -> int:
        return int(value) % self._p

    def normalize(self, values: np.ndarray) -> np.ndarray:
        return np.remainder(values, self._p)

    def add(self, x: Any, y: Any, out: Optional[np.ndarray] = None) -> Any:
        if out is None:
            return np.remainder(np.add(x, y, dtype=np.int64), self._p)
        np.add(x, y, out=out)
        return np.remainder(out, self._p, out=out)

    def sub(self, x: Any, y: Any, out: Optional[np.ndarray] = None) -> Any:
        if out is None:
            return np.remainder(np.subtract(x, y, dtype=np.int64), self._p)
        np.subtract(x, y, out=out)
        return np.remainder(out, self._p, out=out)

    def mul(self, x: Any, y: Any, out: Optional[np.ndarray] = None) -> Any:
        if out is None:
            return np.remainder(np.multiply(x, y, dtype=np.int64), self._p)
        np.multiply(x, y, out=out)
        return np.remainder(out, self._p, out=out)

    def neg(self, x: Any) -> Any:
        return np.remainder(np.negative(x, dtype=np.int64), self._p)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Exact product mod p.

        Products whose partial sums could overflow int64 are computed over
        16-bit limbs of ``b`` and recombined.
        """
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if a.shape[1] == 0:
            return self.zeros((a.shape[0], b.shape[1]))
        bound = (self._p - 1) ** 2
        if INT64_MAX // bound >= 64 or INT64_MAX // bound >= a.shape[1]:
            return _chunked_product(a, b, self._p, bound)

        mask = (1 << LIMB_BITS) - 1
        limb_bound = (self._p - 1) * mask
        low = _chunked_product(a, b & mask, self._p, limb_bound)
        high = _chunked_product(a, b >> LIMB_BITS, self._p, limb_bound)
        shift = (1 << LIMB_BITS) % self._p
        return (high * shift + low) % self._p

    def inv(self, x: Any) -> int:
        x = int(x) % self._p
        if x == 0:
            raise FieldError("Zero has no multiplicative inverse")
        return pow(x, -1, self._p)

    def pow(self, x: Any, exponent: int) -> int:
        if exponent < 0:
            return pow(self.inv(x), -exponent, self._p)
        return pow(int(x) % self._p, exponent, self._p)

    # Residues

    def legendre(self, k: Any) -> int:
        """Legendre symbol of ``k`` as -1, 0 or 1.

        Raises:
            FieldError: For p = 2, where every element is a square
        """
        if self._p == 2:
            raise FieldError("Legendre symbol is undefined for p = 2")
        r = pow(int(k) % self._p, (self._p - 1) // 2, self._p)
        return -1 if r == self._p - 1 else r

    def is_square(self, x: Any) -> bool:
        if self._p == 2:
            return True
        return self.legendre(x) != -1

    def sqrt(self, x: Any) -> int:
        """Canonical square root min(r, p - r) by Tonelli–Shanks."""
        p = self._p
        x = int(x) % p
        if p == 2 or x == 0:
            return x
        if self.legendre(x) != 1:
            raise NonResidue(f"{x} is not a square in {self.name}")

        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1

        c = pow(self.lqnr, q, p)
        r = pow(x, (q + 1) // 2, p)
        t = pow(x, q, p)
        m = s
        while t != 1:
            # lowest i with t^(2^i) = 1
            i, t2i = 0, t
            while t2i != 1:
                t2i = t2i * t2i % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            r = r * b % p
            c = b * b % p
            t = t * c % p
            m = i
        return min(r, p - r)

    # Storage

    def random(self, shape: Shape, rng: np.random.Generator) -> np.ndarray:
        return rng.integers(0, self._p, size=shape, dtype=np.int64)

    def contains(self, values: np.ndarray) -> bool:
        values = np.asarray(values)
        if not np.issubdtype(values.dtype, np.integer):
            return False
        return bool(np.all((values >= 0) & (values < self._p)))

    def format_element(self, x: Any) -> str:
        return str(int(x))

    def parse_element(self, token: str) -> int:
        value = int(token)
        if not 0 <= value < self._p:
            raise FieldError(f"{value} is not a canonical residue of {self.name}")
        return value


def legendre(k: int, field: PrimeField) -> int:
    """Legendre symbol of ``k`` modulo the field's prime."""
    return field.legendre(k)


def sqrt_mod(k: Any, field: IField) -> Any:
    """Canonical square root of ``k`` in any supported field.

    Raises:
        NonResidue: If ``k`` has no square root
    """
    return field.sqrt(k)


def lqnr(field: PrimeField) -> int:
    """Smallest s >= 2 that is a quadratic non-residue."""
    return field.lqnr
