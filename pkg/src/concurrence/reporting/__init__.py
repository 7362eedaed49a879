"""Readers, writers, plots and manifests."""

from .manifest import ManifestRecorder, sha256_bytes, sha256_file
from .plots import emit_plot, render_persistence_svg
from .reports import (
    read_json,
    save_complex_to_file,
    save_diagram_to_file,
    save_dropped_to_file,
    save_euler_to_file,
    save_localization_to_file,
    save_moments_to_file,
    write_json,
)
from .tables import (
    diagram_table,
    moments_table,
    read_binary_csv,
    read_series_csv,
    write_binary_csv,
    write_series_csv,
    write_table,
)

__all__ = [
    "ManifestRecorder",
    "sha256_bytes",
    "sha256_file",
    "emit_plot",
    "render_persistence_svg",
    "read_json",
    "write_json",
    "save_complex_to_file",
    "save_diagram_to_file",
    "save_dropped_to_file",
    "save_euler_to_file",
    "save_localization_to_file",
    "save_moments_to_file",
    "diagram_table",
    "moments_table",
    "read_binary_csv",
    "read_series_csv",
    "write_binary_csv",
    "write_series_csv",
    "write_table",
]
