"""
Tests for variability screening and dichotomization.
"""

import math

import numpy as np
import pytest

from concurrence.core.exceptions import NoVariablesRetainedError, UndefinedRobustCVError
from concurrence.core.models import DichotomizeConfig, Domain, SeriesMatrix
from concurrence.signal.dichotomize import (
    active_count,
    dichotomize,
    dichotomize_fourier,
    dichotomize_time,
    periodogram,
    screen_and_dichotomize,
)
from concurrence.signal.variability import drop_low_variability, robust_cv, variability_ranking
from concurrence.simulation.generator import SyntheticDataGenerator


def screening_matrix():
    """Five variables with known robust CVs."""
    columns = {
        "a": [5, 5, 5, 5, 5],
        "b": [-1, 0, 0, 0, 1],
        "c": [1, 2, 3, 4, 5],
        "d": [10, 11, 12, 13, 14],
        "e": [1, 10, 20, 30, 40],
    }
    values = np.array(list(columns.values()), dtype=float).T
    return SeriesMatrix(values=values, var_labels=list(columns))


class TestRobustCV:
    """Test robust_cv."""

    def test_linear_interpolation_quantiles(self):
        """Test IQR over median on a short series."""
        assert robust_cv([1, 2, 3, 4]) == pytest.approx(0.6)
        assert robust_cv([10, 11, 12, 13, 14]) == pytest.approx(2 / 12)

    def test_zero_median_undefined(self):
        """Test that a zero median has no CV."""
        with pytest.raises(UndefinedRobustCVError, match="undefined robust CV"):
            robust_cv([-1, 0, 0, 1])

    def test_too_short(self):
        """Test that one value is rejected."""
        with pytest.raises(ValueError, match="at least 2 values"):
            robust_cv([3.0])


class TestScreening:
    """Test variability ranking and dropping."""

    def test_ranking_order(self):
        """Test that undefined CVs come first, then ascending CV."""
        ranking = variability_ranking(screening_matrix())

        assert [label for label, _, _ in ranking] == ["b", "a", "d", "c", "e"]
        assert math.isnan(ranking[0][1])
        assert [always for _, _, always in ranking] == [True, True, False, False, False]

    def test_constant_and_undefined_always_dropped(self):
        """Test that the quota is extended by always-drop variables."""
        retained, dropped = drop_low_variability(screening_matrix(), 0.2)

        assert dropped == ["a", "b"]
        assert retained.var_labels == ["c", "d", "e"]

    def test_quota_uses_floor(self):
        """Test that floor(fraction * V) variables are dropped."""
        sm = screening_matrix().select(["c", "d", "e"])

        retained, dropped = drop_low_variability(sm, 0.4)

        assert dropped == ["d"]
        assert retained.var_labels == ["c", "e"]

    def test_zero_fraction_keeps_variable_columns(self):
        """Test that nothing beyond always-drop goes at fraction 0."""
        _, dropped = drop_low_variability(screening_matrix(), 0.0)

        assert dropped == ["a", "b"]

    def test_nothing_retained(self):
        """Test that screening every variable out is an error."""
        sm = SeriesMatrix(values=np.full((4, 2), 3.0), var_labels=["x", "y"])

        with pytest.raises(NoVariablesRetainedError, match="no variables retained"):
            drop_low_variability(sm, 0.0)

    def test_invalid_fraction(self):
        """Test that a fraction of 1 is rejected."""
        with pytest.raises(ValueError, match=r"\[0, 1\)"):
            drop_low_variability(screening_matrix(), 1.0)

    @pytest.mark.parametrize("seed", range(10))
    def test_column_order_equivariance(self, seed):
        """Test that permuting columns drops the same variables and keeps the new order."""
        rng = np.random.default_rng(seed)
        labels = [f"r{i}" for i in range(8)]
        values = rng.normal(loc=10.0, scale=rng.uniform(0.5, 3.0, size=8), size=(50, 8))
        perm = rng.permutation(8)
        sm = SeriesMatrix(values=values, var_labels=labels)
        permuted = SeriesMatrix(values=values[:, perm], var_labels=[labels[i] for i in perm])

        retained, dropped = drop_low_variability(sm, 0.25)
        moved, moved_dropped = drop_low_variability(permuted, 0.25)

        assert moved_dropped == dropped
        assert moved.var_labels == [labels[i] for i in perm if labels[i] not in dropped]
        for label in moved.var_labels:
            column = retained.var_labels.index(label)
            np.testing.assert_array_equal(moved.values[:, moved.var_labels.index(label)], retained.values[:, column])


class TestTimeDomain:
    """Test time-domain dichotomization."""

    def test_active_count_rounds_up(self):
        """Test ceil with float noise."""
        assert active_count(10, 0.2) == 2
        assert active_count(11, 0.2) == 3
        assert active_count(100, 0.07) == 7

    def test_top_values_active(self):
        """Test that the largest values are marked."""
        sm = SeriesMatrix(values=[[1.0], [9.0], [3.0], [8.0], [2.0]], var_labels=["a"])

        bm = dichotomize_time(sm, 0.4)

        assert bm.bits[:, 0].tolist() == [0, 1, 0, 1, 0]

    def test_ties_go_to_earlier_time(self):
        """Test tie-breaking at the cutoff."""
        sm = SeriesMatrix(values=[[1.0], [3.0], [3.0], [3.0], [0.0]], var_labels=["a"])

        bm = dichotomize_time(sm, 0.2)

        assert bm.bits[:, 0].tolist() == [0, 1, 0, 0, 0]

    def test_column_sums_exact(self):
        """Test every variable gets ceil(fraction * T) active points."""
        sm = SyntheticDataGenerator(3).white_noise_series(50, 6)

        bm = dichotomize_time(sm, 0.2)

        assert bm.N == 50
        assert bm.column_sums().tolist() == [10] * 6


class TestFourierDomain:
    """Test Fourier-domain dichotomization."""

    def test_periodogram_length_and_peak(self):
        """Test that a pure tone peaks at its frequency."""
        t = np.arange(64)
        power = periodogram(np.sin(2 * np.pi * 5 * t / 64))

        assert len(power) == 32
        assert int(np.argmax(power)) == 4

    def test_constant_series_has_no_power(self):
        """Test that a constant series yields zero power and no activity."""
        sm = SeriesMatrix(values=np.full((16, 1), 2.0), var_labels=["a"])

        assert periodogram(sm.values[:, 0]).tolist() == [0.0] * 8
        assert dichotomize_fourier(sm, 0.9).bits.sum() == 0

    def test_active_count_per_variable(self):
        """Test the strict-quantile count on 96 frequencies."""
        sm = SyntheticDataGenerator(11).white_noise_series(192, 4)

        bm = dichotomize_fourier(sm, 0.9)

        assert bm.N == 96
        assert bm.column_sums().tolist() == [10] * 4

    def test_tone_frequency_active(self):
        """Test that the frequency of a tone is marked active."""
        t = np.arange(64)
        rng = np.random.default_rng(0)
        values = np.column_stack([np.sin(2 * np.pi * 5 * t / 64) + 0.01 * rng.standard_normal(64)])
        sm = SeriesMatrix(values=values, var_labels=["a"])

        bm = dichotomize_fourier(sm, 0.9)

        assert bm.bits[4, 0] == 1

    @pytest.mark.parametrize("length", [16, 17, 64, 65])
    def test_periodogram_matches_direct_transform(self, length):
        """Test against the O(T^2) sum over demeaned values for odd and even lengths."""
        x = np.random.default_rng(length).standard_normal(length)
        centered = x - x.mean()
        t = np.arange(length)
        expected = [
            abs(np.sum(centered * np.exp(-2j * np.pi * k * t / length))) ** 2 / length
            for k in range(1, length // 2 + 1)
        ]

        power = periodogram(x)

        assert len(power) == length // 2
        np.testing.assert_allclose(power, expected, rtol=1e-9, atol=1e-9)

    def test_cosine_power_at_one_frequency(self):
        """Test that a cosine at frequency 3 of 16 carries all the power."""
        t = np.arange(16)

        power = periodogram(np.cos(2 * np.pi * 3 * t / 16))

        assert power[2] == pytest.approx(4.0)
        np.testing.assert_allclose(np.delete(power, 2), 0.0, atol=1e-9)

    def test_constant_offset_ignored(self):
        """Test that adding a constant leaves the periodogram unchanged."""
        x = np.random.default_rng(3).standard_normal(40)

        np.testing.assert_allclose(periodogram(x + 7.0), periodogram(x), atol=1e-9)

    def test_two_tones_exactly_active(self):
        """Test that two tones over faint noise are the only active frequencies."""
        t = np.arange(64)
        rng = np.random.default_rng(1)
        tones = np.sin(2 * np.pi * 5 * t / 64) + 0.8 * np.sin(2 * np.pi * 12 * t / 64)
        sm = SeriesMatrix(values=(tones + 0.01 * rng.standard_normal(64)).reshape(-1, 1), var_labels=["a"])

        bm = dichotomize_fourier(sm, 0.95)

        assert bm.column_sums().tolist() == [2]
        assert np.flatnonzero(bm.bits[:, 0]).tolist() == [4, 11]


class TestDispatch:
    """Test dichotomize and screen_and_dichotomize."""

    def test_domain_dispatch(self):
        """Test that the config domain picks the method."""
        sm = SyntheticDataGenerator(5).white_noise_series(40, 3)

        assert dichotomize(sm, DichotomizeConfig()).N == 40
        assert dichotomize(sm, DichotomizeConfig(domain=Domain.FOURIER)).N == 20

    def test_screen_then_dichotomize(self):
        """Test screening and dichotomization together."""
        sm = SyntheticDataGenerator(5).white_noise_series(40, 10)

        bm, dropped = screen_and_dichotomize(sm, DichotomizeConfig(drop_fraction=0.2))

        assert len(dropped) == 2
        assert bm.V == 8
        assert not set(dropped) & set(bm.var_labels)
