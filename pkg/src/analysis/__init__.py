"""
Analytic and instrumented operation counts.
"""

from .opcount import CountModel, TableRow, count, table5, table5_csv, crossover, instrumented_count
