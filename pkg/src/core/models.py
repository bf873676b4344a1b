"""
Data models and enumerations shared across the package.
"""

from dataclasses import dataclass, asdict
from enum import Enum
from typing import Any, Dict, List, Optional


@dataclass
class ValidationResult:
    """Result of file, configuration or parameter validation."""
    is_valid: bool
    error_message: Optional[str] = None
    warnings: Optional[List[str]] = None
    metadata: Optional[Dict[str, Any]] = None

    def __post_init__(self):
        """Initialize warnings list if None."""
        if self.warnings is None:
            self.warnings = []


class FieldKind(Enum):
    """Supported coefficient domains."""
    PRIME = "fp"
    QUAD_EXT = "fp2"
    BINARY = "gf2k"
    COMPLEX = "complex"


class HalfConvention(Enum):
    """How a half (lower-triangle) addition of an m×m block is counted."""
    TRIANGULAR = "triangular"    # m(m+1)/2
    SQUARE_HALF = "square_half"  # m²/2


class Algorithm(Enum):
    """Algorithms covered by the analytic count model."""
    CLASSICAL_SYRK = "classical_syrk"
    SYRK_DC = "syrk_dc"
    FAST_SYRK = "fast_syrk"
    WINOGRAD_GEMM = "winograd_gemm"
    CLASSICAL_GEMM = "classical_gemm"


@dataclass
class OpCount:
    """Exact tally of scalar multiplications and additions.

    ``products`` counts classical base-case matrix products, which is how
    the complex 2M/3M methods are audited.
    """
    mults: int = 0
    adds: int = 0
    products: int = 0

    @property
    def total(self) -> int:
        return self.mults + self.adds

    def record(self, mults: int = 0, adds: int = 0, products: int = 0) -> None:
        """Accumulate operations into this counter."""
        self.mults += mults
        self.adds += adds
        self.products += products

    def merge(self, other: 'OpCount') -> 'OpCount':
        """Componentwise sum, leaving both operands untouched."""
        return OpCount(
            mults=self.mults + other.mults,
            adds=self.adds + other.adds,
            products=self.products + other.products,
        )

    def __add__(self, other: 'OpCount') -> 'OpCount':
        return self.merge(other)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for reporting."""
        data = asdict(self)
        data['total'] = self.total
        return data


def tally(counter: Optional[OpCount], mults: int = 0, adds: int = 0, products: int = 0) -> None:
    """Record into ``counter`` when one is supplied."""
    if counter is not None:
        counter.record(mults, adds, products)


@dataclass(frozen=True)
class RecursionPolicy:
    """Controls when recursive algorithms stop and call classical kernels.

    ``max_levels`` of None means unlimited. Level budgets are passed down
    the recursion as ``Optional[int]`` values obtained from
    :meth:`initial_budget` and :meth:`descend`.
    """
    threshold: int = 64
    max_levels: Optional[int] = None

    def __post_init__(self):
        validation = self.validate()
        if not validation.is_valid:
            raise ValueError(f"Invalid recursion policy: {validation.error_message}")

    def validate(self) -> ValidationResult:
        """Validate policy parameters."""
        errors = []
        warnings = []

        if self.threshold < 2:
            errors.append("Threshold must be at least 2")
        elif self.threshold > 4096:
            warnings.append("Threshold is very large (>4096); recursion will rarely trigger")

        if self.max_levels is not None and self.max_levels < 0:
            errors.append("max_levels must be non-negative or None")

        return ValidationResult(
            is_valid=len(errors) == 0,
            error_message="; ".join(errors) if errors else None,
            warnings=warnings
        )

    def initial_budget(self) -> Optional[int]:
        return self.max_levels

    @staticmethod
    def descend(budget: Optional[int]) -> Optional[int]:
        return None if budget is None else budget - 1

    def allows(self, budget: Optional[int], *dims: int) -> bool:
        """True when another recursion level may be taken on these dimensions."""
        if budget is not None and budget <= 0:
            return False
        return min(dims) >= self.threshold

    def to_dict(self) -> Dict[str, Any]:
        return {'threshold': self.threshold, 'max_levels': self.max_levels}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RecursionPolicy':
        return cls(threshold=data.get('threshold', 64), max_levels=data.get('max_levels'))
