"""
Recursive products: Strassen–Winograd, the fast symmetric product and its
scaled, conjugate and complex variants.
"""

from .winograd import gemm_winograd, peel_odd
from .fast_syrk import SyrkPlan, syrk_fast, syrk_fast_acc, herk_fast
from .syrk_dc import syrk_dc
from .complex_methods import syrk_2m_complex, gemm_3m_complex
from .scaled_syrk import (
    Scalar,
    TwoByTwo,
    DiagonalScaling,
    BlockDiagonal,
    fold_diagonal,
    fold_block_diagonal,
    syrkd,
    syrkbd
)
