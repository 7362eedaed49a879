"""
Persistence plots.

Each dimension of a diagram is written as a (birth, death, multiplicity)
CSV and a static SVG scatter of death against birth. Coinciding pairs are
drawn once with a glyph whose area grows with the multiplicity.
"""

from pathlib import Path
from typing import Tuple, Union

import matplotlib

matplotlib.use("Agg")

from matplotlib.figure import Figure  # noqa: E402
from loguru import logger  # noqa: E402

from ..core.models import PersistenceDiagram  # noqa: E402
from .tables import diagram_table, write_table  # noqa: E402

PathLike = Union[str, Path]

BASE_MARKER_AREA = 36.0
SVG_RC = {"svg.hashsalt": "concurrence", "svg.fonttype": "none"}


def render_persistence_svg(diagram: PersistenceDiagram, d: int, path: PathLike) -> Path:
    """Write the death-vs-birth scatter of dimension ``d`` as SVG."""
    table = diagram_table(diagram, d)
    top = int(table["birth"].max()) + 1 if len(table) else 1

    with matplotlib.rc_context(SVG_RC):
        fig = Figure(figsize=(4.0, 4.0))
        ax = fig.add_subplot(1, 1, 1)
        ax.plot([0, top], [0, top], color="0.6", linewidth=0.8, linestyle="--")
        if len(table):
            ax.scatter(
                table["birth"],
                table["death"],
                s=BASE_MARKER_AREA * table["multiplicity"],
                facecolors="none",
                edgecolors="#1b1f8a",
                linewidths=1.2,
            )
        ax.set_xlim(0, top)
        ax.set_ylim(-0.5, top)
        ax.set_xlabel("birth (frequency level)")
        ax.set_ylabel("death (frequency level)")
        ax.set_title(f"Dimension {d} persistence plot")
        fig.tight_layout()
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(target, format="svg", metadata={"Date": None})
    return target


def emit_plot(diagram: PersistenceDiagram, d: int, output_dir: PathLike, stem: str = "persistence") -> Tuple[Path, Path]:
    """Write ``<stem>_dim<d>.csv`` and ``<stem>_dim<d>.svg`` into ``output_dir``.

    Returns:
        Paths of the CSV and SVG files.
    """
    out = Path(output_dir)
    csv_path = write_table(diagram_table(diagram, d), out / f"{stem}_dim{d}.csv")
    svg_path = render_persistence_svg(diagram, d, out / f"{stem}_dim{d}.svg")
    logger.debug(f"Persistence plot for dimension {d} written to {svg_path}")
    return csv_path, svg_path
