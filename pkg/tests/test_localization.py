"""
Tests for short-cycle localization.
"""

import pytest

from concurrence.core.complex import build_filtered_complex
from concurrence.core.exceptions import ChainNotSupportedError, InsufficientDimensionError, NotACycleError
from concurrence.core.localization import (
    adjacent_pairs,
    build_localization_report,
    class_of,
    cycle_lifespans,
    enumerate_short_cycles,
    is_boundary,
    localize,
    localize_level,
    narrow_classes,
    short_cycle_chain,
)
from concurrence.core.models import BinaryMatrix
from concurrence.core.persistence import ChainGF2
from concurrence.simulation.fixtures import toy_fixture

from .oracles import ShortCycleOracle, brute_counts, random_binary


class TestShortCycles:
    """Test short-cycle enumeration."""

    def test_chain_is_simplex_boundary(self):
        """Test the chain of a short 1-cycle."""
        chain = short_cycle_chain([4, 2, 3])

        assert chain.dimension == 1
        assert list(chain) == [(2, 3), (2, 4), (3, 4)]
        assert chain.is_cycle()

    def test_dataset_i(self, dataset_i):
        """Test that XYZ is the only short 1-cycle of dataset I."""
        fc = build_filtered_complex(dataset_i, 1)

        assert enumerate_short_cycles(fc, 1, 1) == [(2, 3, 4)]
        assert enumerate_short_cycles(fc, 2, 1) == [(2, 3, 4)]
        assert enumerate_short_cycles(fc, 4, 1) == []

    def test_dataset_iv(self, dataset_iv):
        """Test short cycles of the hollow tetrahedron."""
        fc = build_filtered_complex(dataset_iv, 2)

        assert len(enumerate_short_cycles(fc, 2, 1)) == 4
        assert enumerate_short_cycles(fc, 1, 2) == [(0, 1, 2, 3)]
        assert enumerate_short_cycles(fc, 2, 2) == []

    def test_short_zero_cycles(self, dataset_i):
        """Test that short 0-cycles are vertex pairs."""
        fc = build_filtered_complex(dataset_i, 1)

        assert len(enumerate_short_cycles(fc, 2, 0)) == 10
        assert enumerate_short_cycles(fc, 5, 0) == [(2, 4)]

    def test_matches_brute_force(self):
        """Test enumeration against every (d+2)-subset, dimensions 0-3."""
        for seed in range(40):
            bm = random_binary(seed)
            fc = build_filtered_complex(bm, 3)
            counts = brute_counts(bm.bits, 5)
            for f in fc.levels():
                for d in (0, 1, 2, 3):
                    oracle = ShortCycleOracle(counts, f, d, bm.V)
                    assert enumerate_short_cycles(fc, f, d) == oracle.short_cycles

    def test_dimension_cap(self, dataset_i):
        """Test that localizing needs dimension d+1 stored."""
        fc = build_filtered_complex(dataset_i, 0)

        with pytest.raises(InsufficientDimensionError):
            enumerate_short_cycles(fc, 1, 1)


class TestClassQueries:
    """Test class_of, is_boundary and localize."""

    def test_hole_of_dataset_i(self, dataset_i):
        """Test that XYZ is a hole at levels 1 and 2 and V-W-X-Z is another class."""
        fc = build_filtered_complex(dataset_i, 1)
        xyz = short_cycle_chain([2, 3, 4])
        square = ChainGF2.of([(0, 1), (1, 2), (2, 4), (0, 4)])

        assert not is_boundary(fc, 2, xyz)
        assert not is_boundary(fc, 1, xyz)
        assert class_of(fc, 1, xyz) != class_of(fc, 1, square)
        assert localize(fc, 1, xyz) == [(2, 3, 4)]
        assert localize(fc, 1, square) == []

    def test_filled_hole_bounds(self):
        """Test that XYZ bounds at level 1 in dataset II."""
        fc = build_filtered_complex(toy_fixture("II"), 1)
        xyz = short_cycle_chain([2, 3, 4])

        assert not is_boundary(fc, 2, xyz)
        assert is_boundary(fc, 1, xyz)
        assert class_of(fc, 1, xyz) == frozenset()

    def test_invalid_chains(self, dataset_i):
        """Test unsupported and non-cycle chains."""
        fc = build_filtered_complex(dataset_i, 1)

        with pytest.raises(ChainNotSupportedError, match="not supported in frame"):
            class_of(fc, 4, short_cycle_chain([2, 3, 4]))
        with pytest.raises(NotACycleError, match="not a cycle"):
            is_boundary(fc, 1, ChainGF2.of([(2, 3), (3, 4)]))

    def test_zero_chain_bounds(self, dataset_i):
        """Test that the empty chain is a boundary."""
        fc = build_filtered_complex(dataset_i, 1)

        assert is_boundary(fc, 1, ChainGF2.zero(1))


class TestNarrowClasses:
    """Test narrow classes and adjacency."""

    def test_dataset_iv_level_two(self, dataset_iv):
        """Test that the four triangles of K4 are distinct, non-adjacent classes."""
        fc = build_filtered_complex(dataset_iv, 1)

        level = localize_level(fc, 2, 1)

        assert level.betti == 3
        assert len(level.narrow) == 4
        assert level.adjacent == []
        assert adjacent_pairs(fc, 2, 1) == []
        assert narrow_classes(fc, 1, 1) == []

    def test_dataset_iv_top_class(self, dataset_iv):
        """Test the single narrow 2-class of the hollow tetrahedron."""
        fc = build_filtered_complex(dataset_iv, 2)

        narrow = narrow_classes(fc, 1, 2)

        assert len(narrow) == 1
        assert narrow[0].short_cycles == ((0, 1, 2, 3),)
        assert narrow[0].basis_indices == (0,)
        assert narrow[0].representative.is_cycle()

    def test_adjacent_triangles(self):
        """Test that two triangles sharing an edge with a third short cycle are adjacent."""
        # edges of K4 on a,b,c,d, with only triangle abd filled
        rows = [[1, 1, 0, 0], [1, 0, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 0, 1], [0, 0, 1, 1], [1, 1, 0, 1]]
        fc = build_filtered_complex(BinaryMatrix.from_rows(rows, ["a", "b", "c", "d"]), 1)

        level = localize_level(fc, 1, 1)

        assert level.betti == 2
        assert len(level.narrow) == 3
        assert len(level.adjacent) == 3

    @pytest.mark.parametrize("seed", range(100))
    def test_matches_brute_force(self, seed):
        """Test narrow and adjacent counts against rank tests, dimensions 0-3."""
        bm = random_binary(seed)
        fc = build_filtered_complex(bm, 3)
        counts = brute_counts(bm.bits, 5)

        for f in fc.levels():
            for d in (0, 1, 2, 3):
                oracle = ShortCycleOracle(counts, f, d, bm.V)
                level = localize_level(fc, f, d)
                groups = oracle.classes()
                assert len(level.narrow) == len(groups)
                assert sorted(n.short_cycles for n in level.narrow) == sorted(tuple(g) for g in groups)
                assert len(level.adjacent) == oracle.adjacent_count()


class TestCycleLifespans:
    """Test short-cycle lifespans and reports."""

    def test_dataset_i(self, dataset_i):
        """Test that XYZ is non-bounding at levels 1 and 2."""
        fc = build_filtered_complex(dataset_i, 1)

        records = cycle_lifespans(fc, 1, threads=1)

        assert len(records) == 1
        assert records[0].labels == ("X", "Y", "Z")
        assert records[0].levels_nonbounding == (1, 2)
        assert records[0].cycle_lifespan == 2
        assert records[0].contiguous

    def test_dataset_ii(self):
        """Test that the filled XYZ lives at level 2 only."""
        fc = build_filtered_complex(toy_fixture("II"), 1)

        records = cycle_lifespans(fc, 1)

        assert [r.levels_nonbounding for r in records] == [(2,)]

    def test_integer_levels_between_counts(self):
        """Test that a hole spanning skipped counts covers every integer level."""
        rows = [[1, 1, 0]] * 5 + [[1, 0, 1]] * 5 + [[0, 1, 1]] * 5
        fc = build_filtered_complex(BinaryMatrix.from_rows(rows, ["a", "b", "c"]), 1)

        records = cycle_lifespans(fc, 1)

        assert fc.levels() == [10, 5]
        assert records[0].levels_nonbounding == (1, 2, 3, 4, 5)

    def test_report_threads_agree(self, dataset_iv):
        """Test that threaded localization gives the same report."""
        fc = build_filtered_complex(dataset_iv, 1)

        serial = build_localization_report(fc, 1, threads=1).to_dict()
        threaded = build_localization_report(fc, 1, threads=4).to_dict()

        assert serial == threaded
        assert [level["level"] for level in serial["levels"]] == [3, 2, 1]
        assert serial["levels"][1]["short_cycle_count"] == 4
        assert len(serial["short_cycle_records"]) == 4

    def test_report_selected_levels(self, dataset_i):
        """Test that chosen levels restrict the per-level section only."""
        fc = build_filtered_complex(dataset_i, 1)

        report = build_localization_report(fc, 1, levels=[2], threads=1)

        assert [level.level for level in report.levels] == [2]
        assert report.records[0].levels_nonbounding == (1, 2)
        assert report.to_dict()["short_cycle_records"][0]["vertices"] == ["X", "Y", "Z"]

    def test_report_invalid_level(self, dataset_i):
        """Test that level 0 is rejected."""
        fc = build_filtered_complex(dataset_i, 1)

        with pytest.raises(ValueError, match="at least 1"):
            build_localization_report(fc, 1, levels=[0])
