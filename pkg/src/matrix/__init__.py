"""
Dense matrices, classical kernels and scratch allocation tracking.
"""

from .matrix import Matrix, BlockView, random_matrix
from .kernels import (
    gemm_classical,
    syrk_classical,
    mirror_lower_to_upper,
    add_lower,
    add_full
)
from .workspace import Workspace
