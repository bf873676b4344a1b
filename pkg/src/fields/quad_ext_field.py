"""
Quadratic extensions F_{p^2} = F_p[x]/(x^2 - ns) with ns the least non-residue.
"""

from functools import cached_property
from itertools import count
from typing import Any, Optional, Tuple

import numpy as np

from ..core.errors import FieldError, NonResidue
from ..core.interfaces import IField, Shape
from .prime_field import PrimeField

Pair = Tuple[int, int]


class QuadExtField(IField):
    """F_{p^2} for an odd prime p.

    The element a + b·x is stored as the integer a + b·p, which is below
    2^62 for every supported p. Conjugation is the Frobenius map
    x -> x^p = ns^((p-1)/2)·x = -x, i.e. (a, b) -> (a, -b).
    """

    def __init__(self, p: int):
        base = PrimeField(p)
        if base.p == 2:
            raise FieldError("Quadratic extension requires an odd prime")
        self._base = base
        self._p = base.p
        self._ns = base.lqnr

    @property
    def base(self) -> PrimeField:
        return self._base

    @property
    def p(self) -> int:
        return self._p

    @property
    def ns(self) -> int:
        return self._ns

    @property
    def name(self) -> str:
        return f"F_{self._p}^2"

    @property
    def characteristic(self) -> int:
        return self._p

    @property
    def order(self) -> Optional[int]:
        return self._p * self._p

    @property
    def dtype(self) -> np.dtype:
        return np.dtype(np.int64)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, QuadExtField) and other._p == self._p

    def __hash__(self) -> int:
        return hash(("fp2", self._p))

    # Encoding

    def element(self, a: int, b: int) -> int:
        """Encode a + b·x."""
        return int(a) % self._p + (int(b) % self._p) * self._p

    def coordinates(self, x: Any) -> Tuple[Any, Any]:
        """Decode to (a, b) with x = a + b·x."""
        return np.remainder(x, self._p), np.floor_divide(x, self._p)

    def _encode(self, a: Any, b: Any, out: Optional[np.ndarray]) -> Any:
        result = a + b * self._p
        if out is not None:
            out[...] = result
            return out
        return result

    def _pair(self, x: Any) -> Pair:
        x = int(x)
        return x % self._p, x // self._p

    def _pair_mul(self, u: Pair, v: Pair) -> Pair:
        p = self._p
        return ((u[0] * v[0] + self._ns * (u[1] * v[1] % p)) % p,
                (u[0] * v[1] + u[1] * v[0]) % p)

    # Arithmetic

    def from_int(self, value: int) -> int:
        return int(value) % self._p

    def add(self, x: Any, y: Any, out: Optional[np.ndarray] = None) -> Any:
        (a1, b1), (a2, b2) = self.coordinates(x), self.coordinates(y)
        return self._encode((a1 + a2) % self._p, (b1 + b2) % self._p, out)

    def sub(self, x: Any, y: Any, out: Optional[np.ndarray] = None) -> Any:
        (a1, b1), (a2, b2) = self.coordinates(x), self.coordinates(y)
        return self._encode((a1 - a2) % self._p, (b1 - b2) % self._p, out)

    def neg(self, x: Any) -> Any:
        a, b = self.coordinates(x)
        return self._encode(-a % self._p, -b % self._p, None)

    def mul(self, x: Any, y: Any, out: Optional[np.ndarray] = None) -> Any:
        p = self._p
        (a1, b1), (a2, b2) = self.coordinates(x), self.coordinates(y)
        real = (a1 * a2 % p + self._ns * (b1 * b2 % p)) % p
        imag = (a1 * b2 % p + a2 * b1 % p) % p
        return self._encode(real, imag, out)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        base = self._base
        a0, a1 = self.coordinates(np.asarray(a, dtype=np.int64))
        b0, b1 = self.coordinates(np.asarray(b, dtype=np.int64))
        real = base.add(base.matmul(a0, b0), base.mul(self._ns, base.matmul(a1, b1)))
        imag = base.add(base.matmul(a0, b1), base.matmul(a1, b0))
        return real + imag * self._p

    def conj(self, x: Any) -> Any:
        a, b = self.coordinates(x)
        return self._encode(a, -b % self._p, None)

    def norm(self, x: Any) -> int:
        """x·conj(x) = a^2 - ns·b^2, an element of the prime subfield."""
        a, b = self._pair(x)
        return (a * a - self._ns * b * b) % self._p

    def inv(self, x: Any) -> int:
        n = self.norm(x)
        if n == 0:
            raise FieldError("Zero has no multiplicative inverse")
        a, b = self._pair(x)
        n_inv = pow(n, -1, self._p)
        return self.element(a * n_inv, -b * n_inv)

    def pow(self, x: Any, exponent: int) -> int:
        if exponent < 0:
            x, exponent = self.inv(x), -exponent
        result: Pair = (1, 0)
        square = self._pair(x)
        while exponent:
            if exponent & 1:
                result = self._pair_mul(result, square)
            square = self._pair_mul(square, square)
            exponent >>= 1
        return self.element(*result)

    # Residues

    def is_square(self, x: Any) -> bool:
        if int(x) == 0:
            return True
        return self.pow(x, (self.order - 1) // 2) == 1

    @cached_property
    def _non_square(self) -> int:
        for j in count(0):
            candidate = self.element(j, 1)
            if not self.is_square(candidate):
                return candidate
        raise AssertionError("unreachable")

    def sqrt(self, x: Any) -> int:
        """Tonelli–Shanks on the cyclic group of order p^2 - 1.

        The canonical root is the one with the smaller integer encoding.
        """
        x = int(x)
        if x == 0:
            return 0
        if not self.is_square(x):
            raise NonResidue(f"{x} is not a square in {self.name}")

        q, s = self.order - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1

        c = self._pair(self.pow(self._non_square, q))
        r = self._pair(self.pow(x, (q + 1) // 2))
        t = self._pair(self.pow(x, q))
        m = s
        while t != (1, 0):
            i, t2i = 0, t
            while t2i != (1, 0):
                t2i = self._pair_mul(t2i, t2i)
                i += 1
            b = c
            for _ in range(m - i - 1):
                b = self._pair_mul(b, b)
            r = self._pair_mul(r, b)
            c = self._pair_mul(b, b)
            t = self._pair_mul(t, c)
            m = i
        root = self.element(*r)
        return min(root, int(self.neg(root)))

    # Storage

    def random(self, shape: Shape, rng: np.random.Generator) -> np.ndarray:
        return rng.integers(0, self._p * self._p, size=shape, dtype=np.int64)

    def contains(self, values: np.ndarray) -> bool:
        values = np.asarray(values)
        if not np.issubdtype(values.dtype, np.integer):
            return False
        return bool(np.all((values >= 0) & (values < self._p * self._p)))

    def format_element(self, x: Any) -> str:
        return str(int(x))

    def parse_element(self, token: str) -> int:
        value = int(token)
        if not 0 <= value < self._p * self._p:
            raise FieldError(f"{value} is not an encoded element of {self.name}")
        return value
