"""
Command implementations. Each takes a validated CliConfig and returns an exit code.
"""

import csv
import io
import logging
import time
from dataclasses import dataclass, field as dataclass_field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import psutil

from ..algorithms.complex_methods import gemm_3m_complex, syrk_2m_complex
from ..algorithms.fast_syrk import SyrkPlan, herk_fast, syrk_fast, syrk_fast_acc
from ..algorithms.scaled_syrk import BlockDiagonal, DiagonalScaling, Scalar, TwoByTwo, syrkbd, syrkd
from ..algorithms.syrk_dc import syrk_dc
from ..algorithms.winograd import gemm_winograd
from ..analysis.opcount import CountModel, count, instrumented_count, table5, table5_csv
from ..core.interfaces import IField
from ..core.models import Algorithm, RecursionPolicy
from ..core.validation import ValidationSystem
from ..fields.binary_field import BinaryField
from ..fields.complex_field import ComplexField
from ..fields.prime_field import PrimeField
from ..fields.quad_ext_field import QuadExtField
from ..fields.sum_of_squares import nrsyf, sos
from ..matrix.kernels import gemm_classical, syrk_classical
from ..matrix.matrix import Matrix, random_matrix
from .config import CliConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

BENCH_HEADER = ("variant", "n", "seconds", "effective_gfops")
COUNT_HEADER = ("algorithm", "n", "rec", "y", "analytic", "instrumented")

# Small thresholds recurse down to tiny blocks; their cases are capped in size
SMALL_THRESHOLDS = {8: 64, 2: 16}


def _emit(config: CliConfig, text: str) -> None:
    if config.output is not None:
        config.output.write_text(text, encoding='utf-8')
        logger.info(f"Wrote {config.output}")
    else:
        print(text, end="")


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _aligned_text(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    table = [list(map(str, header))] + [list(map(str, row)) for row in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    return "".join("  ".join(cell.rjust(w) for cell, w in zip(row, widths)).rstrip() + "\n" for row in table)


def _table(config: CliConfig, header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    return _csv_text(header, rows) if config.csv else _aligned_text(header, rows)


# Verification


@dataclass
class _Battery:
    """Pass/fail tally of one family of oracle comparisons."""
    name: str
    passed: int = 0
    failures: List[str] = dataclass_field(default_factory=list)

    def check(self, ok: bool, label: str) -> None:
        if ok:
            self.passed += 1
        else:
            self.failures.append(label)
            logger.warning(f"{self.name}: mismatch on {label}")

    @property
    def ok(self) -> bool:
        return not self.failures

    def report(self) -> str:
        total = self.passed + len(self.failures)
        status = "PASS" if self.ok else "FAIL"
        line = f"{status} {self.name} {self.passed}/{total}"
        if self.failures:
            line += " (" + ", ".join(self.failures[:5]) + ")"
        return line


def _oracle_syrk(a: Matrix) -> Matrix:
    c = Matrix.zeros(a.field, a.rows, a.rows)
    return gemm_classical(1, a, a.transpose(), 0, c)


def _oracle_scaled(a: Matrix, scaling: Matrix) -> Matrix:
    field = a.field
    left = Matrix(field, field.matmul(a.data, scaling.data))
    c = Matrix.zeros(field, a.rows, a.rows)
    return gemm_classical(1, left, a.transpose(), 0, c)


def _random_element(field: IField, rng: np.random.Generator, nonzero: bool = False) -> Any:
    while True:
        x = field.random((1,), rng)[0]
        x = complex(x) if not field.is_exact else int(x)
        if not nonzero or x != 0:
            return x


def _random_block_diagonal(field: IField, dim: int, rng: np.random.Generator,
                           antidiagonal_only: bool = False) -> BlockDiagonal:
    blocks: List[Any] = []
    remaining = dim
    while remaining:
        if remaining >= 2 and (antidiagonal_only or rng.random() < 0.5):
            gamma = 0 if antidiagonal_only or rng.random() < 0.5 else _random_element(field, rng)
            blocks.append(TwoByTwo(_random_element(field, rng, nonzero=True), gamma))
            remaining -= 2
        else:
            blocks.append(Scalar(_random_element(field, rng)))
            remaining -= 1
    return BlockDiagonal(tuple(blocks))


class _Verifier:
    """Runs every oracle battery the configured field supports."""

    def __init__(self, config: CliConfig, field: IField):
        self.config = config
        self.field = field
        self.rng = np.random.default_rng(config.seed)
        self.batteries: Dict[str, _Battery] = {}

    def battery(self, name: str) -> _Battery:
        return self.batteries.setdefault(name, _Battery(name))

    def shapes(self) -> List[Tuple[int, int, int]]:
        """(rows, cols, threshold) per case; the first case is the full size."""
        n = self.config.n
        cols = self.config.cols or n
        thresholds = (self.config.threshold,) + tuple(SMALL_THRESHOLDS)
        cases = [(n, cols, self.config.threshold)]
        for i in range(1, self.config.cases):
            threshold = thresholds[i % len(thresholds)]
            cap = SMALL_THRESHOLDS.get(threshold, max(n, cols))
            rows = int(self.rng.integers(1, min(n, cap) + 1))
            width = int(self.rng.integers(1, min(cols, cap) + 1))
            cases.append((rows, width, threshold))
        return cases

    def run(self) -> List[_Battery]:
        field = self.field
        for case, (rows, cols, threshold) in enumerate(self.shapes()):
            label = f"{rows}x{cols}/t{threshold}"
            plan = SyrkPlan.for_field(field, threshold=threshold)
            policy = RecursionPolicy(threshold=threshold)
            a = random_matrix(field, rows, cols, self.config.seed + case)
            expected = _oracle_syrk(a)

            self.battery("syrk_fast").check(syrk_fast(a, plan).lower_equals(expected), label)
            self.battery("syrk_dc").check(syrk_dc(a, policy).lower_equals(expected), label)
            self._check_acc(a, plan, label)
            self._check_winograd(a, policy, label)

            if isinstance(field, QuadExtField):
                self._check_herk(a, plan, label)
            if isinstance(field, ComplexField):
                self._check_complex(a, label)
            if isinstance(field, (PrimeField, BinaryField)):
                self._check_scaled(a, plan, label)
        return list(self.batteries.values())

    def _check_acc(self, a: Matrix, plan: SyrkPlan, label: str) -> None:
        field = self.field
        alpha = field.from_int(self.config.alpha)
        beta = field.from_int(self.config.beta) if self.config.beta else _random_element(field, self.rng)
        c0 = random_matrix(field, a.rows, a.rows, int(self.rng.integers(1 << 30)))
        expected = syrk_classical(alpha, a, beta, c0.copy())
        result = syrk_fast_acc(alpha, a, beta, c0.copy(), plan)
        self.battery("syrk_fast_acc").check(result.lower_equals(expected), label)

    def _check_winograd(self, a: Matrix, policy: RecursionPolicy, label: str) -> None:
        b = random_matrix(self.field, a.cols, int(self.rng.integers(1, a.rows + 1)), int(self.rng.integers(1 << 30)))
        expected = gemm_classical(1, a, b, 0, Matrix.zeros(self.field, a.rows, b.cols))
        self.battery("gemm_winograd").check(gemm_winograd(a, b, policy).equals(expected), label)

    def _check_herk(self, a: Matrix, plan: SyrkPlan, label: str) -> None:
        field = self.field
        expected = Matrix(field, field.matmul(a.data, field.conj(a.data.T)))
        self.battery("herk_fast").check(herk_fast(a, plan).lower_equals(expected), label)

    def _check_complex(self, a: Matrix, label: str) -> None:
        field = self.field
        direct = Matrix(field, a.data @ a.data.T)
        self.battery("syrk_2m_complex").check(syrk_2m_complex(a).equals(direct), label)
        b = random_matrix(field, a.cols, a.rows, int(self.rng.integers(1 << 30)))
        self.battery("gemm_3m_complex").check(gemm_3m_complex(a, b).equals(Matrix(field, a.data @ b.data)), label)

    def _check_scaled(self, a: Matrix, plan: SyrkPlan, label: str) -> None:
        field = self.field
        d = DiagonalScaling(tuple(_random_element(field, self.rng) for _ in range(a.cols)))
        expected = _oracle_scaled(a, d.to_matrix(field))
        self.battery("syrkd").check(syrkd(a, d, plan).lower_equals(expected), label)

        antidiagonal_only = field.characteristic == 2 and a.cols % 2 == 0 and self.rng.random() < 0.3
        b = _random_block_diagonal(field, a.cols, self.rng, antidiagonal_only)
        expected = _oracle_scaled(a, b.to_matrix(field))
        self.battery("syrkbd").check(syrkbd(a, b, plan).lower_equals(expected), label)


def cmd_verify(config: CliConfig) -> int:
    """
    Compare every fast algorithm against its classical oracle.

    Prints one PASS/FAIL line per battery, then an overall verdict.

    Returns:
        0 when everything matches, 1 otherwise
    """
    field = config.make_field()
    logger.info(f"Verifying over {field.name} with {config.cases} cases, n <= {config.n}, Y cost {SyrkPlan(field).ycost}")

    batteries = _Verifier(config, field).run()
    lines = [battery.report() for battery in batteries]
    ok = all(battery.ok for battery in batteries)
    lines.append("PASS" if ok else "FAIL")
    _emit(config, "\n".join(lines) + "\n")
    logger.info(f"Verification {'passed' if ok else 'failed'}")
    return EXIT_OK if ok else EXIT_FAILURE


# Operation counts


def cmd_count(config: CliConfig) -> int:
    """
    Either the full operation-count grid (``--table5``) or analytic and
    instrumented counts for one size and depth.
    """
    if config.table5:
        sizes = [s for s in (4, 8, 16, 32, 64, 128) if s <= config.n] if 'n' in config.model_fields_set else None
        rows = table5(sizes) if sizes is not None else table5()
        _emit(config, table5_csv(rows))
        return EXIT_OK

    field = config.make_field()
    n = config.n
    rec = 1 if config.rec is None else config.rec
    y = SyrkPlan(field).ycost

    entries = [
        (Algorithm.CLASSICAL_SYRK, 0, 0),
        (Algorithm.SYRK_DC, rec, 0),
        (Algorithm.FAST_SYRK, rec, y),
        (Algorithm.WINOGRAD_GEMM, rec, 0),
        (Algorithm.CLASSICAL_GEMM, 0, 0),
    ]
    rows = []
    for algorithm, levels, ycost in entries:
        analytic = count(CountModel(algorithm, n, levels, ycost))
        measured = instrumented_count(field, n, levels, algorithm, config.seed)
        rows.append((algorithm.value, n, levels, ycost, analytic, measured.total))
        if measured.total != analytic:
            logger.warning(f"{algorithm.value}: instrumented {measured.total} differs from analytic {analytic}")
    _emit(config, _table(config, COUNT_HEADER, rows))
    return EXIT_OK


# Benchmark


def _pin_to_one_cpu() -> Optional[List[int]]:
    """Restrict this process to its first allowed CPU; returns the previous set."""
    try:
        process = psutil.Process()
        previous = process.cpu_affinity()
        process.cpu_affinity(previous[:1])
        logger.info(f"Pinned to CPU {previous[0]}")
        return previous
    except (AttributeError, psutil.Error, OSError) as e:
        logger.warning(f"CPU pinning unavailable: {e}")
        return None


def _unpin(previous: Optional[List[int]]) -> None:
    if previous is not None:
        try:
            psutil.Process().cpu_affinity(previous)
        except (psutil.Error, OSError) as e:
            logger.warning(f"Could not restore CPU affinity: {e}")


def _best_time(run: Callable[[], Any], repeat: int) -> float:
    best = float('inf')
    for _ in range(repeat):
        start = time.perf_counter()
        run()
        best = min(best, time.perf_counter() - start)
    return best


def _gemm_then_fold(a: Matrix) -> Matrix:
    return _oracle_syrk(a).lower()


def bench_sizes(config: CliConfig) -> List[int]:
    """Explicit --sizes, else doubling from 32 up to n."""
    if config.sizes:
        return list(config.sizes)
    sizes = []
    n = min(32, config.n)
    while n < config.n:
        sizes.append(n)
        n *= 2
    sizes.append(config.n)
    return sizes


def cmd_bench(config: CliConfig) -> int:
    """
    Time each variant over a size sweep.

    Effective Gfops is n³/(10⁹·seconds) for every variant, so values are
    comparable across algorithms with different operation counts.
    """
    field = config.make_field()
    system = ValidationSystem().validate_system_requirements()
    logger.info(f"Host: {system.metadata}")
    for warning in system.warnings:
        logger.warning(warning)

    plan = SyrkPlan.for_field(field, threshold=config.threshold, max_levels=config.rec)
    variants: Dict[str, Callable[[Matrix], Any]] = {
        "classical": lambda a: syrk_classical(1, a, 0, Matrix.zeros(field, a.rows, a.rows)),
        "gemm_fold": _gemm_then_fold,
        "syrk_dc": lambda a: syrk_dc(a, plan.policy),
        "syrk_fast": lambda a: syrk_fast(a, plan),
    }

    previous = _pin_to_one_cpu()
    rows = []
    try:
        for n in bench_sizes(config):
            a = random_matrix(field, n, config.cols or n, config.seed)
            for name, run in variants.items():
                seconds = _best_time(lambda: run(a), config.repeat)
                gfops = n ** 3 / (1e9 * seconds) if seconds > 0 else float('inf')
                rows.append((name, n, f"{seconds:.6f}", f"{gfops:.4f}"))
                logger.debug(f"{name} n={n}: {seconds:.6f}s")
    finally:
        _unpin(previous)

    _emit(config, _table(config, BENCH_HEADER, rows))
    return EXIT_OK


# File-based products


def cmd_syrk(config: CliConfig) -> int:
    """
    Read A from a matrix file and write Low(A·Aᵀ), or the full symmetric
    result with --mirror. With --scaling the block-diagonal file B gives
    A·B·Aᵀ instead.
    """
    field = config.make_field()
    validator = ValidationSystem()
    matrix_check = validator.validate_matrix_file(str(config.input), field)
    if not matrix_check.is_valid:
        logger.error(matrix_check.error_message)
        return EXIT_USAGE
    for warning in matrix_check.warnings:
        logger.warning(warning)

    a = matrix_check.metadata['matrix']
    plan = SyrkPlan.for_field(field, threshold=config.threshold, max_levels=config.rec,
                              mirror_output=config.mirror)

    if config.scaling is not None:
        scaling_check = validator.validate_scaling_file(str(config.scaling), field, expected_dim=a.cols)
        if not scaling_check.is_valid:
            logger.error(scaling_check.error_message)
            return EXIT_USAGE
        scaling = scaling_check.metadata['scaling']
        if scaling.is_diagonal:
            c = syrkd(a, scaling.diagonal(), plan)
        else:
            c = syrkbd(a, scaling, plan)
    elif config.hermitian:
        c = herk_fast(a, plan)
    else:
        c = syrk_fast(a, plan)

    if not config.mirror:
        c = c.lower()
    _emit(config, c.to_text())
    return EXIT_OK


# Scalar helpers


def cmd_sos(config: CliConfig) -> int:
    """Print ``a b`` with a² + b² = value mod p."""
    field = PrimeField(config.prime)
    a, b = sos(field, config.value)
    _emit(config, f"{a} {b}\n")
    return EXIT_OK


def cmd_nrsyf(config: CliConfig) -> int:
    """Print the 2×2 factor Y with Y·Yᵀ = diag(alpha, beta) for two non-residues."""
    field = PrimeField(config.prime)
    _emit(config, nrsyf(field, config.alpha, config.beta).to_text())
    return EXIT_OK


COMMANDS: Dict[str, Callable[[CliConfig], int]] = {
    "verify": cmd_verify,
    "count": cmd_count,
    "bench": cmd_bench,
    "syrk": cmd_syrk,
    "sos": cmd_sos,
    "nrsyf": cmd_nrsyf,
}
