"""
Fast SYRK - Main Package

Exact symmetric rank-k updates (A·Aᵀ) with a five-product recursive
algorithm over prime fields, binary fields, quadratic extensions and
complex numbers, together with an exact operation-count model.
"""

__version__ = "1.0.0"
__author__ = "Fast SYRK Team"
