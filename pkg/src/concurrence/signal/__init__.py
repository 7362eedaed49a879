"""Variability screening and dichotomization of continuous series."""

from .dichotomize import (
    dichotomize,
    dichotomize_fourier,
    dichotomize_time,
    periodogram,
    screen_and_dichotomize,
)
from .variability import drop_low_variability, robust_cv, variability_ranking

__all__ = [
    "robust_cv",
    "variability_ranking",
    "drop_low_variability",
    "dichotomize_time",
    "periodogram",
    "dichotomize_fourier",
    "dichotomize",
    "screen_and_dichotomize",
]
