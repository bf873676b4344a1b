"""
Validated command-line configuration.
"""

import argparse
import logging
from pathlib import Path
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from ..core.errors import FastSyrkError
from ..core.interfaces import IField
from ..core.models import FieldKind, RecursionPolicy
from ..core.validation import ValidationSystem
from ..fields.factory import make_field
from ..fields.prime_field import MAX_MODULUS, is_prime

logger = logging.getLogger(__name__)

Command = Literal["verify", "count", "bench", "syrk", "sos", "nrsyf"]


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


class CliConfig(BaseModel):
    """
    Options of one command invocation.

    Built from the argparse namespace; anything argparse left unset falls
    back to the defaults below.
    """
    model_config = ConfigDict(frozen=True, extra='forbid')

    command: Command
    field: FieldKind = FieldKind.PRIME
    prime: int = 131071
    k: int = 1
    n: int = 64
    cols: Optional[int] = None
    threshold: int = 64
    rec: Optional[int] = None
    seed: int = 0
    alpha: int = 1
    beta: int = 0
    cases: int = 20
    value: Optional[int] = None
    sizes: Optional[List[int]] = None
    repeat: int = 1
    input: Optional[Path] = None
    scaling: Optional[Path] = None
    output: Optional[Path] = None
    csv: bool = False
    mirror: bool = False
    hermitian: bool = False
    table5: bool = False
    verbose: bool = False

    @field_validator('prime')
    @classmethod
    def _check_prime(cls, p: int) -> int:
        if not 2 <= p < MAX_MODULUS:
            raise ValueError(f"prime must satisfy 2 <= p < 2^31, got {p}")
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        return p

    @field_validator('k')
    @classmethod
    def _check_degree(cls, k: int) -> int:
        if not 1 <= k <= 16:
            raise ValueError(f"extension degree must be in 1..16, got {k}")
        return k

    @field_validator('threshold')
    @classmethod
    def _check_threshold(cls, threshold: int) -> int:
        if threshold < 2:
            raise ValueError("threshold must be at least 2")
        return threshold

    @field_validator('n', 'cases', 'repeat')
    @classmethod
    def _check_positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be at least 1")
        return value

    @field_validator('cols', 'rec')
    @classmethod
    def _check_non_negative(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 0:
            raise ValueError("must be non-negative")
        return value

    @field_validator('sizes')
    @classmethod
    def _check_sizes(cls, sizes: Optional[List[int]]) -> Optional[List[int]]:
        if sizes is not None:
            if not sizes or any(n < 1 for n in sizes):
                raise ValueError("sizes must be positive")
            return sorted(set(sizes))
        return sizes

    @field_validator('input', 'scaling')
    @classmethod
    def _check_exists(cls, path: Optional[Path]) -> Optional[Path]:
        if path is not None and not path.is_file():
            raise ValueError(f"file does not exist: {path}")
        return path

    @model_validator(mode='after')
    def _check_combination(self) -> 'CliConfig':
        command = self.command
        if self.field is FieldKind.QUAD_EXT and self.prime == 2:
            raise ValueError("fp2 needs an odd prime")
        spec = ValidationSystem().validate_field_spec(self.field.value, self.prime, self.k)
        if not spec.is_valid:
            raise ValueError(spec.error_message)
        for warning in spec.warnings:
            logger.debug(warning)
        if command == "count":
            if not _is_power_of_two(self.n):
                raise ValueError(f"count needs a power-of-two n, got {self.n}")
            if self.table5 and self.rec is not None:
                raise ValueError("--table5 covers every recursion depth and takes no --rec")
            if self.table5 and self.n < 4:
                raise ValueError("--table5 needs n >= 4")
        elif self.table5:
            raise ValueError("--table5 only applies to count")
        if command == "syrk" and self.input is None:
            raise ValueError("syrk needs an --input matrix file")
        if self.scaling is not None and command != "syrk":
            raise ValueError("--scaling only applies to syrk")
        if self.scaling is not None and self.hermitian:
            raise ValueError("--scaling cannot be combined with --hermitian")
        if self.hermitian and self.field is not FieldKind.QUAD_EXT:
            raise ValueError("--hermitian needs --field fp2")
        if command in ("sos", "nrsyf"):
            if self.field is not FieldKind.PRIME or self.prime == 2:
                raise ValueError(f"{command} needs --field fp with an odd prime")
            if command == "sos" and self.value is None:
                raise ValueError("sos needs --value")
        return self

    @classmethod
    def from_namespace(cls, namespace: argparse.Namespace) -> 'CliConfig':
        """Drop unset options so the model defaults apply."""
        values = {key: value for key, value in vars(namespace).items() if value is not None}
        return cls(**values)

    def make_field(self) -> IField:
        """
        Raises:
            FieldError: If the field cannot be built
        """
        return make_field(self.field, self.prime, self.k)

    def policy(self) -> RecursionPolicy:
        return RecursionPolicy(threshold=self.threshold, max_levels=self.rec)

    def describe(self) -> str:
        try:
            return self.make_field().name
        except FastSyrkError:
            return self.field.value
