"""Tabulate the Chern-class ML degree over reduced-degree tuples."""
import logging
from itertools import combinations_with_replacement

import pandas as pd

from chow_chern import ml_degree_exact_sequence, ml_degree_theorem
from errors import InputError

logger = logging.getLogger(__name__)

COLUMNS = ["reduced_degrees", "theorem", "exact_sequence", "difference"]


def build_degree_table(n, max_degree):
    """One row per non-decreasing tuple (d'_0, ..., d'_n) with entries in 1..max_degree"""
    if n < 1:
        raise InputError(f"n must be at least 1, got {n}")
    if max_degree < 1:
        raise InputError(f"max_degree must be at least 1, got {max_degree}")
    records = []
    for degrees in combinations_with_replacement(range(1, max_degree + 1), n + 1):
        theorem = ml_degree_theorem(n, degrees)
        exact = ml_degree_exact_sequence(n, degrees)
        records.append({
            "reduced_degrees": " ".join(str(d) for d in degrees),
            "theorem": theorem,
            "exact_sequence": exact,
            "difference": theorem - exact,
        })
    logger.info(f"Degree table for n={n}: {len(records)} rows")
    return pd.DataFrame(records, columns=COLUMNS)
