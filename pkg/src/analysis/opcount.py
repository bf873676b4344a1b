"""
Closed-form operation counts for the symmetric and general products at powers of two.

Every recursion is the per-level operation tally of the corresponding
algorithm, bottoming out in the classical kernels:

    ClassicalGemm(n)       = 2n³ - n²
    ClassicalSyrk(n)       = n²(n+1)/2 + (n-1)n(n+1)/2
    WinogradGemm(n, l)     = 7·W(n/2, l-1) + 15(n/2)²
    FastSyrk(n, r, y)      = 3·F(n/2, r-1) + 2·W(n/2, r-1) + 6(n/2)² + 3·h(n/2) + 2y(n/2)²
    SyrkDC(n, r)           = 4·D(n/2, r-1) + 2·W(n/2, r-1) + (n/2)² + 2·(n/2)(n/2+1)/2

A half addition h(m) costs m(m+1)/2 (triangular) or m²/2 (square-half).
"""

import csv
import io
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Union

from ..algorithms.fast_syrk import SyrkPlan, syrk_fast
from ..algorithms.syrk_dc import syrk_dc
from ..algorithms.winograd import gemm_winograd
from ..core.errors import InvalidModel
from ..core.interfaces import IField
from ..core.models import Algorithm, HalfConvention, OpCount, RecursionPolicy
from ..matrix.kernels import gemm_classical, syrk_classical
from ..matrix.matrix import Matrix, random_matrix

logger = logging.getLogger(__name__)

Count = Union[int, Fraction]

TABLE_SIZES = (4, 8, 16, 32, 64, 128)
TABLE_LEVELS = (1, 2, 3, 4)
TABLE_YCOSTS = (0, 1, 2, 3)
CSV_HEADER = ("algorithm", "rec", "n", "count")


@dataclass(frozen=True)
class CountModel:
    """
    One analytic operation count.

    Attributes:
        algorithm: Which recurrence to evaluate
        n: Matrix size, a power of two
        rec: Recursion levels of the symmetric product (Winograd levels for
            WinogradGemm)
        y: Operations per entry for applying Y (FastSyrk only)
        sw: Winograd levels for the general products of the first level;
            defaults to rec - 1 and decreases with each level
        half_convention: Cost of a half addition
    """
    algorithm: Algorithm
    n: int
    rec: int = 0
    y: int = 0
    sw: Optional[int] = None
    half_convention: HalfConvention = HalfConvention.TRIANGULAR

    def validate(self) -> None:
        """
        Raises:
            InvalidModel: For sizes that are not powers of two, negative
                levels or more levels than the size supports
        """
        n, rec = self.n, self.rec
        if n < 1 or n & (n - 1):
            raise InvalidModel(f"Size must be a power of two, got {n}")
        if rec < 0:
            raise InvalidModel(f"Recursion levels must be non-negative, got {rec}")
        if not 0 <= self.y <= 3:
            raise InvalidModel(f"Y cost must be between 0 and 3, got {self.y}")
        if self.algorithm is Algorithm.FAST_SYRK:
            if rec and n < 2 ** (rec + 1):
                raise InvalidModel(f"{rec} fast levels need n >= {2 ** (rec + 1)}, got {n}")
        elif self.algorithm in (Algorithm.SYRK_DC, Algorithm.WINOGRAD_GEMM):
            if n < 2 ** rec:
                raise InvalidModel(f"{rec} levels need n >= {2 ** rec}, got {n}")
        elif rec:
            raise InvalidModel(f"{self.algorithm.value} has no recursion levels")


def _exact(value: Fraction) -> Count:
    return int(value) if value.denominator == 1 else value


def classical_gemm_count(n: int) -> int:
    return 2 * n ** 3 - n ** 2


def classical_syrk_count(n: int) -> int:
    return n * n * (n + 1) // 2 + (n - 1) * n * (n + 1) // 2


def winograd_count(n: int, levels: int) -> int:
    if levels <= 0 or n < 2:
        return classical_gemm_count(n)
    m = n // 2
    return 7 * winograd_count(m, levels - 1) + 15 * m * m


def half_add_count(m: int, convention: HalfConvention) -> Fraction:
    if convention is HalfConvention.TRIANGULAR:
        return Fraction(m * (m + 1), 2)
    return Fraction(m * m, 2)


def fast_syrk_count(n: int, rec: int, y: int, convention: HalfConvention = HalfConvention.TRIANGULAR,
                    sw: Optional[int] = None) -> Fraction:
    if rec <= 0 or n < 2:
        return Fraction(classical_syrk_count(n))
    m = n // 2
    sw = rec - 1 if sw is None else sw
    return (3 * fast_syrk_count(m, rec - 1, y, convention, max(sw - 1, 0))
            + 2 * winograd_count(m, sw)
            + 6 * m * m + 3 * half_add_count(m, convention) + 2 * y * m * m)


def syrk_dc_count(n: int, rec: int) -> int:
    if rec <= 0 or n < 2:
        return classical_syrk_count(n)
    m = n // 2
    return 4 * syrk_dc_count(m, rec - 1) + 2 * winograd_count(m, rec - 1) + m * m + m * (m + 1)


def count(model: CountModel) -> Count:
    """
    Total scalar operations (multiplications plus additions) of a model.

    Raises:
        InvalidModel: See :meth:`CountModel.validate`
    """
    model.validate()
    algorithm, n, rec = model.algorithm, model.n, model.rec
    if algorithm is Algorithm.CLASSICAL_GEMM:
        return classical_gemm_count(n)
    if algorithm is Algorithm.CLASSICAL_SYRK:
        return classical_syrk_count(n)
    if algorithm is Algorithm.WINOGRAD_GEMM:
        return winograd_count(n, rec)
    if algorithm is Algorithm.SYRK_DC:
        return syrk_dc_count(n, rec)
    return _exact(fast_syrk_count(n, rec, model.y, model.half_convention, model.sw))


@dataclass(frozen=True)
class TableRow:
    """One cell of the operation-count grid."""
    algorithm: str
    rec: int
    n: int
    count: Count


def table5(sizes: Iterable[int] = TABLE_SIZES) -> List[TableRow]:
    """
    The full comparison grid.

    Rows: "syrk" (classical), "Syrk" (divide and conquer, triangular half
    additions) and "G0".."G3" (fast product with Y cost 0..3, square-half
    additions), for 1 to 4 recursion levels. Sizes a row does not support
    are skipped.
    """
    sizes = list(sizes)
    rows = [TableRow("syrk", 0, n, classical_syrk_count(n)) for n in sizes]
    for rec in TABLE_LEVELS:
        rows.extend(TableRow("Syrk", rec, n, syrk_dc_count(n, rec)) for n in sizes if n >= 2 ** rec)
        for y in TABLE_YCOSTS:
            model_rows = []
            for n in sizes:
                if n < 2 ** (rec + 1):
                    continue
                model = CountModel(Algorithm.FAST_SYRK, n, rec, y, half_convention=HalfConvention.SQUARE_HALF)
                model_rows.append(TableRow(f"G{y}", rec, n, count(model)))
            rows.extend(model_rows)
    return rows


def table5_csv(rows: Optional[List[TableRow]] = None) -> str:
    """CSV text with header ``algorithm,rec,n,count``."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows if rows is not None else table5():
        writer.writerow((row.algorithm, row.rec, row.n, row.count))
    return buffer.getvalue()


def crossover(y: int, rec: int = 1, convention: HalfConvention = HalfConvention.SQUARE_HALF,
              limit: int = 1 << 20) -> Optional[int]:
    """Smallest power of two n at which the fast product beats the classical one, or None below ``limit``."""
    n = 2 ** (rec + 1)
    while n <= limit:
        fast = fast_syrk_count(n, rec, y, convention)
        if fast < classical_syrk_count(n):
            return n
        n *= 2
    return None


def instrumented_count(field: IField, n: int, rec: int, algorithm: Algorithm = Algorithm.FAST_SYRK,
                       seed: int = 0) -> OpCount:
    """
    Run an algorithm on a random n×n input and tally what it actually did.

    Recursion goes down to 2×2 blocks (threshold 2) and stops after ``rec``
    levels, which is the setting the analytic model describes.
    """
    policy = RecursionPolicy(threshold=2, max_levels=rec)
    a = random_matrix(field, n, n, seed)
    counter = OpCount()
    if algorithm is Algorithm.FAST_SYRK:
        syrk_fast(a, SyrkPlan(field, policy), counter)
    elif algorithm is Algorithm.SYRK_DC:
        syrk_dc(a, policy, counter)
    elif algorithm is Algorithm.WINOGRAD_GEMM:
        gemm_winograd(a, random_matrix(field, n, n, seed + 1), policy, counter)
    elif algorithm is Algorithm.CLASSICAL_GEMM:
        gemm_classical(1, a, random_matrix(field, n, n, seed + 1), 0, Matrix.zeros(field, n, n), counter)
    else:
        syrk_classical(1, a, 0, Matrix.zeros(field, n, n), counter)
    logger.debug(f"Instrumented {algorithm.value} n={n} rec={rec} over {field.name}: {counter.to_dict()}")
    return counter
