"""
Tests for CSV and JSON input/output, plots and manifests.
"""

import json

import pytest

from concurrence import __version__
from concurrence.core.complex import build_filtered_complex
from concurrence.core.exceptions import DataValidationError
from concurrence.core.persistence import compute_persistence
from concurrence.core.summaries import all_moments
from concurrence.reporting.manifest import ManifestRecorder, sha256_bytes, sha256_file
from concurrence.reporting.plots import emit_plot
from concurrence.reporting.reports import (
    read_json,
    save_diagram_to_file,
    save_euler_to_file,
    save_moments_to_file,
)
from concurrence.reporting.tables import (
    diagram_table,
    moments_table,
    read_binary_csv,
    read_series_csv,
    write_binary_csv,
    write_series_csv,
)
from concurrence.simulation.fixtures import toy_fixture
from concurrence.simulation.generator import SyntheticDataGenerator


class TestReadSeries:
    """Test read_series_csv."""

    def test_valid_file(self, tmp_path):
        """Test reading a small series table."""
        path = tmp_path / "series.csv"
        path.write_text("a,b\n1.5,2\n3,-4e1\n")

        sm = read_series_csv(path)

        assert sm.var_labels == ["a", "b"]
        assert sm.values.tolist() == [[1.5, 2.0], [3.0, -40.0]]

    def test_non_numeric_cell_reports_line(self, tmp_path):
        """Test that the message names file, line and column."""
        path = tmp_path / "series.csv"
        path.write_text("a,b\n1,2\n3,oops\n")

        with pytest.raises(DataValidationError, match=r"series\.csv:3: not a number: 'oops' in column 'b'"):
            read_series_csv(path)

    def test_missing_cell(self, tmp_path):
        """Test that an empty cell is reported as missing."""
        path = tmp_path / "series.csv"
        path.write_text("a,b\n1,\n3,4\n")

        with pytest.raises(DataValidationError, match=":2: missing value"):
            read_series_csv(path)

    def test_duplicate_header(self, tmp_path):
        """Test that duplicated labels are rejected on line 1."""
        path = tmp_path / "series.csv"
        path.write_text("a,a\n1,2\n3,4\n")

        with pytest.raises(DataValidationError, match=":1: duplicated variable labels"):
            read_series_csv(path)

    def test_missing_file(self, tmp_path):
        """Test that a missing file is a data error."""
        with pytest.raises(DataValidationError, match="file not found") as excinfo:
            read_series_csv(tmp_path / "absent.csv")

        assert excinfo.value.exit_code == 2

    def test_write_then_read(self, tmp_path):
        """Test that written series read back unchanged to ten digits."""
        sm = SyntheticDataGenerator(0).white_noise_series(5, 2)
        path = write_series_csv(sm, tmp_path / "noise.csv")

        again = read_series_csv(path)

        assert again.var_labels == sm.var_labels
        assert again.values == pytest.approx(sm.values, rel=1e-9)


class TestReadBinary:
    """Test read_binary_csv and write_binary_csv."""

    def test_sample_layout(self, tmp_path, dataset_iv):
        """Test the written layout."""
        path = write_binary_csv(dataset_iv, tmp_path / "iv.csv")

        assert path.read_text() == "V,W,X,Z\n0,1,1,1\n1,0,1,1\n1,1,0,1\n1,1,1,0\n"
        assert read_binary_csv(path) == dataset_iv

    def test_bad_cell(self, tmp_path):
        """Test that a 2 is rejected with its line."""
        path = tmp_path / "bad.csv"
        path.write_text("a,b\n0,1\n1,2\n")

        with pytest.raises(DataValidationError, match=r":3: expected 0 or 1 in column 'b', got '2'"):
            read_binary_csv(path)

    def test_empty_file(self, tmp_path):
        """Test that an empty file is rejected."""
        path = tmp_path / "empty.csv"
        path.write_text("")

        with pytest.raises(DataValidationError, match="file is empty"):
            read_binary_csv(path)


class TestDiagramOutputs:
    """Test diagram tables, JSON and plots."""

    def create_diagram(self, dataset):
        return compute_persistence(build_filtered_complex(dataset, 2), 2)

    def test_diagram_table_multiplicity(self, dataset_iv):
        """Test that repeated pairs collapse into one row."""
        table = diagram_table(self.create_diagram(dataset_iv), 1)

        assert table.values.tolist() == [[2, 1, 3]]

    def test_diagram_json_layout(self, tmp_path, dataset_iv):
        """Test the diagram JSON."""
        path = save_diagram_to_file(self.create_diagram(dataset_iv), tmp_path / "diagram.json")

        data = read_json(path)

        assert data["dims"][2] == {"d": 2, "pairs": [[1, 0]]}
        assert path.read_text().endswith("}\n")

    def test_emit_plot(self, tmp_path, dataset_iv):
        """Test that each dimension gets a CSV and an SVG."""
        diagram = self.create_diagram(dataset_iv)

        csv_path, svg_path = emit_plot(diagram, 1, tmp_path)

        assert csv_path.name == "persistence_dim1.csv"
        assert csv_path.read_text() == "birth,death,multiplicity\n2,1,3\n"
        assert svg_path.read_text().lstrip().startswith("<?xml")

    def test_emit_plot_is_reproducible(self, tmp_path, dataset_iv):
        """Test that the SVG bytes do not change between runs."""
        diagram = self.create_diagram(dataset_iv)

        _, first = emit_plot(diagram, 2, tmp_path / "a")
        _, second = emit_plot(diagram, 2, tmp_path / "b")

        assert first.read_bytes() == second.read_bytes()

    def test_empty_dimension_plot(self, tmp_path):
        """Test plotting a dimension without pairs."""
        diagram = self.create_diagram(toy_fixture("V"))

        csv_path, svg_path = emit_plot(diagram, 2, tmp_path)

        assert csv_path.read_text() == "birth,death,multiplicity\n"
        assert svg_path.exists()


class TestSummaryOutputs:
    """Test moments and Euler files."""

    def test_moments_files(self, tmp_path, dataset_i):
        """Test the JSON and long-format table."""
        diagram = compute_persistence(build_filtered_complex(dataset_i, 1), 1)
        vectors = all_moments(diagram)

        data = json.loads(save_moments_to_file(vectors, tmp_path / "m.json").read_text())
        table = moments_table(vectors)

        assert data[1]["count"] == 2
        assert data[1]["m"][0][0] is None
        assert data[1]["m"][0][1] == pytest.approx(1.5)
        assert list(table.columns) == ["dimension", "moment", "value"]
        assert len(table) == 18

    def test_euler_file(self, tmp_path):
        """Test the Euler curve file."""
        path = save_euler_to_file({2: -2, 1: 2}, tmp_path / "euler.json")

        assert read_json(path) == [
            {"level": 2, "euler_characteristic": -2},
            {"level": 1, "euler_characteristic": 2},
        ]


class TestManifest:
    """Test run manifests."""

    def test_digests(self, tmp_path):
        """Test file and byte digests agree."""
        path = tmp_path / "x.csv"
        path.write_bytes(b"a\n1\n")

        assert sha256_file(path) == sha256_bytes(b"a\n1\n")
        assert len(sha256_bytes(b"")) == 64

    def test_manifest_fields(self, tmp_path):
        """Test the recorded fields."""
        recorder = ManifestRecorder("persist", {"max_dim": 2})
        manifest = recorder.save("abc", tmp_path / "manifest.json")

        data = read_json(tmp_path / "manifest.json")

        assert manifest.tool_version == __version__
        assert data["command"] == "persist"
        assert data["config"] == {"max_dim": 2}
        assert data["input_digest"] == "abc"
        assert data["wall_time_seconds"] >= 0
