"""
Tests for built-in fixtures and synthetic data.
"""

import numpy as np
import pytest

from concurrence.core.models import NullConfig
from concurrence.simulation.fixtures import list_fixtures, toy_fixture
from concurrence.simulation.generator import (
    SyntheticDataGenerator,
    default_labels,
    generate_independent,
    planted_hole,
)


class TestFixtures:
    """Test the datasets I-V."""

    def test_shapes(self):
        """Test sizes and labels."""
        assert list_fixtures() == ["I", "II", "III", "IV", "V"]
        assert (toy_fixture("I").N, toy_fixture("I").V) == (11, 5)
        assert toy_fixture("iv").var_labels == ["V", "W", "X", "Z"]
        assert toy_fixture("V").N == 3

    def test_dataset_v_drops_first_row(self):
        """Test that dataset V is dataset IV without its first observation."""
        assert np.array_equal(toy_fixture("V").bits, toy_fixture("IV").bits[1:])

    def test_unknown_fixture(self):
        """Test that an unknown name is rejected."""
        with pytest.raises(ValueError):
            toy_fixture("VI")


class TestIndependenceNull:
    """Test generate_independent."""

    def test_exact_column_sums(self):
        """Test that every column has round(rate * N) ones."""
        bm = generate_independent(NullConfig(n_obs=96, n_vars=10, activity_rate=0.2, seed=1))

        assert bm.column_sums().tolist() == [19] * 10
        assert bm.var_labels[0] == "R01"

    def test_deterministic_per_seed(self):
        """Test that a seed fixes the output."""
        cfg = NullConfig(n_obs=40, n_vars=6, seed=99)

        assert generate_independent(cfg) == generate_independent(cfg)
        assert generate_independent(cfg) != generate_independent(NullConfig(n_obs=40, n_vars=6, seed=100))

    def test_default_labels_sort(self):
        """Test zero-padded labels."""
        labels = default_labels(120)

        assert labels[0] == "R001"
        assert labels == sorted(labels)


class TestPlantedHole:
    """Test planted_hole."""

    def test_shell_rows(self):
        """Test the facet rows of a planted 1-hole."""
        bm = planted_hole(1, 3)

        assert bm.bits.tolist() == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]

    def test_four_variables_use_tetrahedron_labels(self):
        """Test that a planted 2-hole on four variables is dataset IV up to row order."""
        bm = planted_hole(2, 4)

        assert bm.var_labels == ["V", "W", "X", "Z"]
        assert sorted(map(tuple, bm.bits.tolist())) == sorted(map(tuple, toy_fixture("IV").bits.tolist()))

    def test_noise_avoids_planted_variables(self):
        """Test that noise rows never touch the shell."""
        bm = planted_hole(2, 8, noise_obs=50, seed=3)

        assert bm.N == 54
        assert bm.bits[4:, :4].sum() == 0
        assert bm.bits[:, :4].all(axis=1).sum() == 0

    def test_invalid_requests(self):
        """Test dimension and size checks."""
        with pytest.raises(ValueError, match="needs at least 4 variables"):
            planted_hole(2, 3)
        with pytest.raises(ValueError, match="nonnegative"):
            planted_hole(-1, 3)


class TestWhiteNoise:
    """Test continuous series generation."""

    def test_positive_level(self):
        """Test that series sit around the offset."""
        sm = SyntheticDataGenerator(2).white_noise_series(100, 3)

        assert sm.values.shape == (100, 3)
        assert np.all(np.abs(np.median(sm.values, axis=0) - 100) < 2)
