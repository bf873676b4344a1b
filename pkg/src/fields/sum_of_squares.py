"""
Sums of two squares over prime fields and 2×2 factors of non-residue pairs.
"""

from typing import Tuple

from ..core.errors import FastSyrkError, FieldError, NotNonResidue
from ..matrix.matrix import Matrix
from .prime_field import PrimeField


def sos(field: PrimeField, k: int) -> Tuple[int, int]:
    """
    Write k as a^2 + b^2 in an odd prime field.

    Residues decompose as (sqrt(k), 0). Otherwise, with s the least
    non-residue, s - 1 is a residue with root c and k/s is a residue with
    root a, so k = s·a^2 = a^2 + (a·c)^2. All roots are canonical.

    Args:
        field: Odd prime field
        k: Any residue class

    Returns:
        Tuple (a, b) with a^2 + b^2 = k
    """
    p = field.p
    if p == 2:
        raise FieldError("Sum of squares decomposition requires an odd prime")
    k = int(k) % p
    if field.legendre(k) == 1:
        return field.sqrt(k), 0

    s = field.lqnr
    c = field.sqrt(s - 1)
    r = k * field.inv(s) % p
    a = field.sqrt(r)
    return a, a * c % p


def nrsyf(field: PrimeField, alpha: int, beta: int) -> Matrix:
    """
    Symmetric factorization of diag(alpha, beta) for two non-residues.

    Returns the 2×2 matrix Y = [[a, b], [c, d]] with Y·Yᵀ = diag(alpha, beta),
    where (a, b) = sos(alpha), d = a·sqrt(beta/alpha) and c = -b·d/a.

    Raises:
        NotNonResidue: If alpha or beta is zero or a square
    """
    p = field.p
    for value in (alpha, beta):
        if field.legendre(value) != -1:
            raise NotNonResidue(f"{int(value) % p} is not a quadratic non-residue mod {p}")

    a, b = sos(field, alpha)
    if a == 0:
        # the non-residue branch of sos always yields a = sqrt(k/s) != 0
        raise FastSyrkError(f"Degenerate sum of squares for {alpha} mod {p}")

    d = a * field.sqrt(int(beta) * field.inv(alpha) % p) % p
    c = -b * d * field.inv(a) % p
    return Matrix.from_rows(field, [[a, b], [c, d]])
