"""
CSV input and output.

Matrices are stored with a header row of variable labels and one row per
observation. Readers report the file and line of the first bad cell.
"""

from pathlib import Path
from typing import List, Tuple, Union

import numpy as np
import pandas as pd
from loguru import logger

from ..core.exceptions import DataValidationError
from ..core.models import BinaryMatrix, MomentVector, PersistenceDiagram, SeriesMatrix
from ..utils.logging import log_matrix_loaded

PathLike = Union[str, Path]


def _read_raw(path: PathLike) -> Tuple[List[str], pd.DataFrame]:
    source = Path(path)
    if not source.exists():
        raise DataValidationError("file not found", source=source)
    try:
        raw = pd.read_csv(
            source,
            header=None,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=True,
            encoding="utf-8",
        )
    except pd.errors.EmptyDataError:
        raise DataValidationError("file is empty", source=source)
    except pd.errors.ParserError as e:
        raise DataValidationError(f"malformed CSV: {e}", source=source)
    except UnicodeDecodeError:
        raise DataValidationError("file is not valid UTF-8", source=source)

    header = [str(h).strip() for h in raw.iloc[0].tolist()]
    if any(not h for h in header):
        raise DataValidationError("empty variable label in header", source=source, line=1)
    duplicated = sorted({h for h in header if header.count(h) > 1})
    if duplicated:
        raise DataValidationError(f"duplicated variable labels {duplicated}", source=source, line=1)
    return header, raw.iloc[1:]


def _first_bad_cell(mask: np.ndarray) -> Tuple[int, int]:
    rows, cols = np.nonzero(mask)
    return int(rows[0]), int(cols[0])


def read_series_csv(path: PathLike) -> SeriesMatrix:
    """Read a T x V matrix of decimal reals.

    Raises:
        DataValidationError: On missing, non-numeric or non-finite cells, or
            a bad header; the message carries file and line.
    """
    header, body = _read_raw(path)
    cells = body.apply(lambda col: col.str.strip())
    values = cells.apply(pd.to_numeric, errors="coerce").to_numpy(dtype=float)
    bad = ~np.isfinite(values)
    if bad.any():
        r, c = _first_bad_cell(bad)
        text = cells.iat[r, c]
        reason = "missing value" if text in ("", None) or pd.isna(text) else f"not a number: '{text}'"
        raise DataValidationError(f"{reason} in column '{header[c]}'", source=path, line=r + 2)
    if values.shape[0] < 2:
        raise DataValidationError("at least 2 time points are required", source=path)
    sm = SeriesMatrix(values=values, var_labels=header)
    log_matrix_loaded(str(path), sm.T, sm.V, "series")
    return sm


def read_binary_csv(path: PathLike) -> BinaryMatrix:
    """Read an N x V' matrix of 0/1 cells.

    Raises:
        DataValidationError: On any cell other than 0 or 1.
    """
    header, body = _read_raw(path)
    cells = body.apply(lambda col: col.str.strip())
    valid = cells.isin(["0", "1"]).to_numpy()
    if not valid.all():
        r, c = _first_bad_cell(~valid)
        raise DataValidationError(
            f"expected 0 or 1 in column '{header[c]}', got '{cells.iat[r, c]}'",
            source=path,
            line=r + 2,
        )
    bits = (cells.to_numpy() == "1").astype(np.uint8).reshape(len(cells), len(header))
    bm = BinaryMatrix(bits=bits, var_labels=header)
    log_matrix_loaded(str(path), bm.N, bm.V, "binary")
    return bm


def binary_frame(bm: BinaryMatrix) -> pd.DataFrame:
    return pd.DataFrame(bm.bits.astype(int), columns=list(bm.var_labels))


def write_binary_csv(bm: BinaryMatrix, path: PathLike) -> Path:
    """Write a binary matrix with a label header."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    binary_frame(bm).to_csv(target, index=False, lineterminator="\n")
    logger.debug(f"Wrote {bm.N}x{bm.V} binary matrix to {target}")
    return target


def write_series_csv(sm: SeriesMatrix, path: PathLike) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame(sm.values, columns=list(sm.var_labels))
    frame.to_csv(target, index=False, lineterminator="\n", float_format="%.10g")
    return target


def diagram_table(diagram: PersistenceDiagram, d: int) -> pd.DataFrame:
    """(birth, death, multiplicity) rows of one dimension, highest birth first."""
    counts = diagram.multiset(d)
    rows = sorted(((b, dd, n) for (b, dd), n in counts.items()), key=lambda r: (-r[0], -r[1]))
    return pd.DataFrame(rows, columns=["birth", "death", "multiplicity"]).astype(int)


def moments_table(vectors: List[MomentVector]) -> pd.DataFrame:
    """One row per (dimension, moment); undefined moments are left empty."""
    rows = [row for v in vectors for row in v.as_rows()]
    return pd.DataFrame(rows, columns=["dimension", "moment", "value"])


def write_table(frame: pd.DataFrame, path: PathLike) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(target, index=False, lineterminator="\n", float_format="%.10g")
    return target
