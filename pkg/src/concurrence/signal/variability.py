"""
Variability screening of continuous series.

Variables are ranked by their robust coefficient of variation (interquartile
range over median) and the least variable share is dropped before
dichotomization. Constant columns and columns with a zero median are always
dropped.
"""

from math import floor
from typing import List, Sequence, Tuple

import numpy as np
from loguru import logger

from ..core.exceptions import NoVariablesRetainedError, UndefinedRobustCVError
from ..core.models import SeriesMatrix
from ..utils.logging import log_variables_dropped


def robust_cv(series: Sequence[float]) -> float:
    """Interquartile range divided by median, with linear-interpolation quantiles.

    Raises:
        ValueError: If the series has fewer than 2 values.
        UndefinedRobustCVError: If the median is exactly 0.
    """
    x = np.asarray(series, dtype=float)
    if x.ndim != 1 or x.size < 2:
        raise ValueError("Robust CV needs a series of at least 2 values")
    q1, median, q3 = np.quantile(x, [0.25, 0.5, 0.75])
    if median == 0:
        raise UndefinedRobustCVError()
    return float((q3 - q1) / median)


def variability_ranking(sm: SeriesMatrix) -> List[Tuple[str, float, bool]]:
    """(label, CV, always_drop) for every variable, least variable first.

    Undefined CVs rank below every number and carry NaN; ties break by label.
    """
    rows = []
    for j, label in enumerate(sm.var_labels):
        column = sm.values[:, j]
        constant = bool(np.ptp(column) == 0)
        try:
            cv = robust_cv(column)
            undefined = False
        except UndefinedRobustCVError:
            cv, undefined = float("nan"), True
        rows.append((undefined, cv, label, constant))
    rows.sort(key=lambda r: (0 if r[0] else 1, 0.0 if r[0] else r[1], r[2]))
    return [(label, cv, undefined or constant) for undefined, cv, label, constant in rows]


def drop_low_variability(sm: SeriesMatrix, drop_fraction: float) -> Tuple[SeriesMatrix, List[str]]:
    """Drop the ``floor(drop_fraction * V)`` least variable variables.

    Constant variables and variables with undefined CV are dropped on top of
    the quota.

    Returns:
        The retained matrix (original column order) and the sorted dropped labels.

    Raises:
        ValueError: If ``drop_fraction`` is outside ``[0, 1)``.
        NoVariablesRetainedError: If nothing is left.
    """
    if not 0 <= drop_fraction < 1:
        raise ValueError(f"drop_fraction must lie in [0, 1), got {drop_fraction}")
    ranking = variability_ranking(sm)
    quota = floor(drop_fraction * sm.V + 1e-9)
    dropped = {label for label, _, _ in ranking[:quota]}
    dropped |= {label for label, _, always in ranking if always}

    retained = [label for label in sm.var_labels if label not in dropped]
    if not retained:
        raise NoVariablesRetainedError()
    log_variables_dropped(sorted(dropped), len(retained))
    if dropped:
        logger.debug(f"Dropped variables: {sorted(dropped)}")
    return sm.select(retained), sorted(dropped)
