"""
Allocation tracking for the scratch buffers requested by recursive schedules.
"""

import logging
from dataclasses import dataclass, field as dataclass_field
from typing import List, Optional, Tuple

import numpy as np

from ..core.interfaces import IField

logger = logging.getLogger(__name__)

SYRK_SCRATCH = "syrk"
PADDING = "padding"
WINOGRAD_SCRATCH = "winograd"


@dataclass(frozen=True)
class Allocation:
    """One scratch buffer handed out by a workspace."""
    tag: str
    shape: Tuple[int, ...]


@dataclass
class Workspace:
    """Records every explicit scratch buffer an algorithm requests.

    Algorithms take an optional workspace; passing one lets callers audit
    how many blocks of which shape a schedule needed.
    """
    allocations: List[Allocation] = dataclass_field(default_factory=list)

    def allocate(self, field: IField, shape: Tuple[int, ...], tag: str) -> np.ndarray:
        self.allocations.append(Allocation(tag, tuple(shape)))
        logger.debug(f"Workspace allocation '{tag}' of shape {tuple(shape)}")
        return field.zeros(shape)

    def count(self, tag: Optional[str] = None) -> int:
        return sum(1 for a in self.allocations if tag is None or a.tag == tag)

    def shapes(self, tag: str) -> List[Tuple[int, ...]]:
        return [a.shape for a in self.allocations if a.tag == tag]

    def reset(self) -> None:
        self.allocations.clear()


def allocate(workspace: Optional[Workspace], field: IField, shape: Tuple[int, ...], tag: str) -> np.ndarray:
    """Zero buffer, recorded in ``workspace`` when one is supplied."""
    if workspace is None:
        return field.zeros(shape)
    return workspace.allocate(field, shape, tag)
