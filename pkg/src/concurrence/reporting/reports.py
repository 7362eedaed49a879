"""
JSON reports written by the command-line tools.

All writers use a fixed key order and indentation and end files with a
newline, so identical results give byte-identical files.
"""

import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Union

from loguru import logger

from ..core.complex import FilteredComplex
from ..core.localization import LocalizationReport
from ..core.models import DichotomizeConfig, MomentVector, PersistenceDiagram

PathLike = Union[str, Path]


def write_json(data: Any, path: PathLike) -> Path:
    """Serialize ``data`` deterministically to ``path``."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w", encoding="utf-8", newline="\n") as f:
        json.dump(data, f, indent=2, default=str)
        f.write("\n")
    logger.debug(f"Wrote {target}")
    return target


def read_json(path: PathLike) -> Any:
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def save_dropped_to_file(dropped: List[str], retained: List[str], config: DichotomizeConfig, path: PathLike) -> Path:
    return write_json(
        {"dropped": list(dropped), "retained": list(retained), "config": config.model_dump(mode="json")},
        path,
    )


def save_complex_to_file(fc: FilteredComplex, path: PathLike) -> Path:
    return write_json(fc.to_dict(), path)


def save_diagram_to_file(diagram: PersistenceDiagram, path: PathLike) -> Path:
    return write_json(diagram.to_dict(), path)


def moments_to_dict(vectors: Iterable[MomentVector]) -> List[Dict[str, Any]]:
    return [
        {"dimension": v.dimension, "count": v.count, "m": [list(row) for row in v.m]}
        for v in vectors
    ]


def save_moments_to_file(vectors: Iterable[MomentVector], path: PathLike) -> Path:
    return write_json(moments_to_dict(vectors), path)


def save_euler_to_file(curve: Mapping[int, int], path: PathLike) -> Path:
    return write_json([{"level": f, "euler_characteristic": chi} for f, chi in curve.items()], path)


def save_localization_to_file(report: LocalizationReport, path: PathLike) -> Path:
    return write_json(report.to_dict(), path)
