"""
Dichotomization of continuous series into binary observations.

Time domain: each variable is active at the time points where it is highest.
Fourier domain: each variable is active at the Fourier frequencies where its
periodogram power is above that variable's power quantile, and every
frequency becomes one observation.
"""

from math import ceil
from typing import Sequence

import numpy as np
from loguru import logger

from ..core.models import BinaryMatrix, DichotomizeConfig, Domain, SeriesMatrix
from .variability import drop_low_variability


def active_count(n: int, active_fraction: float) -> int:
    """``ceil(active_fraction * n)``, tolerant of binary rounding error."""
    return min(n, ceil(active_fraction * n - 1e-9))


def dichotomize_time(sm: SeriesMatrix, active_fraction: float) -> BinaryMatrix:
    """Mark the ``ceil(active_fraction * T)`` largest values of each variable active.

    Ties at the cutoff go to the earlier time point.
    """
    if not 0 < active_fraction < 1:
        raise ValueError(f"active_fraction must lie in (0, 1), got {active_fraction}")
    k = active_count(sm.T, active_fraction)
    bits = np.zeros((sm.T, sm.V), dtype=np.uint8)
    for j in range(sm.V):
        order = np.argsort(-sm.values[:, j], kind="stable")
        bits[order[:k], j] = 1
    logger.debug(f"Time-domain dichotomization: {k} of {sm.T} points active per variable")
    return BinaryMatrix(bits=bits, var_labels=list(sm.var_labels))


def periodogram(series: Sequence[float]) -> np.ndarray:
    """Power ``|DFT|^2 / T`` at frequencies ``2*pi*k/T`` for ``k = 1..T//2``.

    The zero frequency is left out.
    """
    x = np.asarray(series, dtype=float)
    if x.ndim != 1 or x.size < 2:
        raise ValueError("A periodogram needs a series of at least 2 values")
    n = x.size
    if np.ptp(x) == 0:
        return np.zeros(n // 2)
    spectrum = np.fft.rfft(x - x.mean())
    return np.abs(spectrum[1:n // 2 + 1]) ** 2 / n


def dichotomize_fourier(sm: SeriesMatrix, power_quantile: float) -> BinaryMatrix:
    """Mark frequencies whose power is strictly above each variable's power quantile.

    The result has ``T // 2`` observations, one per nonzero Fourier frequency.
    """
    if not 0 < power_quantile < 1:
        raise ValueError(f"power_quantile must lie in (0, 1), got {power_quantile}")
    n_freq = sm.T // 2
    bits = np.zeros((n_freq, sm.V), dtype=np.uint8)
    for j in range(sm.V):
        power = periodogram(sm.values[:, j])
        threshold = np.quantile(power, power_quantile)
        bits[:, j] = power > threshold
    logger.debug(f"Fourier-domain dichotomization over {n_freq} frequencies")
    return BinaryMatrix(bits=bits, var_labels=list(sm.var_labels))


def dichotomize(sm: SeriesMatrix, config: DichotomizeConfig) -> BinaryMatrix:
    """Dichotomize in the domain named by ``config`` without screening."""
    if config.domain == Domain.FOURIER:
        return dichotomize_fourier(sm, config.power_quantile)
    return dichotomize_time(sm, config.active_fraction)


def screen_and_dichotomize(sm: SeriesMatrix, config: DichotomizeConfig):
    """Drop low-variability variables, then dichotomize.

    Returns:
        Tuple of (binary matrix, sorted dropped labels).
    """
    retained, dropped = drop_low_variability(sm, config.drop_fraction)
    return dichotomize(retained, config), dropped
