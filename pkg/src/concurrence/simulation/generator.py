"""
Synthetic data generators.

The independence null keeps exact column sums, matching the marginal
structure dichotomization produces. Planted-hole data carries a known
d-dimensional class: the facets of a (d+1)-simplex with the simplex itself
never observed.
"""

from math import floor
from typing import List, Optional

import numpy as np
from loguru import logger

from ..core.models import BinaryMatrix, NullConfig, SeriesMatrix


def default_labels(n_vars: int, prefix: str = "R") -> List[str]:
    """Zero-padded labels R01, R02, ... sorting in column order."""
    width = max(2, len(str(n_vars)))
    return [f"{prefix}{i + 1:0{width}d}" for i in range(n_vars)]


class SyntheticDataGenerator:
    """Seeded source of null, planted and continuous test data."""

    def __init__(self, seed: int = 0):
        """Initialize the generator.

        Args:
            seed: Seed for numpy's default generator.
        """
        self.seed = seed
        self.rng = np.random.default_rng(seed)
        logger.debug(f"Synthetic data generator initialized with seed {seed}")

    def independent(self, n_obs: int, n_vars: int, activity_rate: float) -> BinaryMatrix:
        """Columns with exactly ``floor(rate * n_obs + 1/2)`` ones at uniform positions."""
        k = min(n_obs, floor(activity_rate * n_obs + 0.5))
        bits = np.zeros((n_obs, n_vars), dtype=np.uint8)
        for j in range(n_vars):
            bits[self.rng.choice(n_obs, size=k, replace=False), j] = 1
        return BinaryMatrix(bits=bits, var_labels=default_labels(n_vars))

    def planted_hole(self, d: int, n_vars: int, noise_obs: int = 0, noise_rate: float = 0.2) -> BinaryMatrix:
        """Facets of a (d+1)-simplex on the first d+2 variables plus noise rows.

        Noise rows only use the remaining variables, so no row ever contains
        all d+2 planted variables.
        """
        if d < 0:
            raise ValueError("Hole dimension must be nonnegative")
        if n_vars < d + 2:
            raise ValueError(f"A {d}-dimensional hole needs at least {d + 2} variables")
        if noise_obs < 0:
            raise ValueError("noise_obs must be nonnegative")
        shell = d + 2
        rows = np.zeros((shell + noise_obs, n_vars), dtype=np.uint8)
        for i in range(shell):
            rows[i, :shell] = 1
            rows[i, i] = 0
        if noise_obs and n_vars > shell:
            rows[shell:, shell:] = self.rng.random((noise_obs, n_vars - shell)) < noise_rate
        return BinaryMatrix(bits=rows, var_labels=_planted_labels(n_vars))

    def white_noise_series(self, n_obs: int, n_vars: int, offset: float = 100.0) -> SeriesMatrix:
        """Independent Gaussian series around a positive level."""
        values = offset + self.rng.standard_normal((n_obs, n_vars)) * self.rng.uniform(0.5, 2.0, n_vars)
        return SeriesMatrix(values=values, var_labels=default_labels(n_vars))


def _planted_labels(n_vars: int) -> List[str]:
    # four variables reproduce the hollow tetrahedron dataset's labels
    if n_vars == 4:
        return ["V", "W", "X", "Z"]
    return default_labels(n_vars)


def generate_independent(cfg: NullConfig) -> BinaryMatrix:
    """Independence null with exact column sums; deterministic per seed."""
    return SyntheticDataGenerator(cfg.seed).independent(cfg.n_obs, cfg.n_vars, cfg.activity_rate)


def planted_hole(d: int, n_vars: int, noise_obs: int = 0, seed: Optional[int] = 0) -> BinaryMatrix:
    """Data with one guaranteed d-dimensional class at level 1."""
    return SyntheticDataGenerator(seed or 0).planted_hole(d, n_vars, noise_obs)
