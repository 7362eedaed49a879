"""
Input checks beyond the pydantic models.

These functions look for conditions that are legal but make an analysis
degenerate, such as variables that are never active. They return
``(is_valid, problems)`` so callers can report everything at once.
"""

from typing import List, Optional, Tuple

import numpy as np
from loguru import logger

from ..core.complex import projected_work
from ..core.models import BinaryMatrix, DichotomizeConfig, Domain, SeriesMatrix


def validate_series_matrix(sm: SeriesMatrix, config: DichotomizeConfig) -> Tuple[bool, List[str]]:
    """Check that ``config`` can dichotomize ``sm`` meaningfully.

    Returns:
        Tuple of (is_valid, list_of_problems).
    """
    problems = []
    if config.domain == Domain.FOURIER and sm.T // 2 < 2:
        problems.append(f"{sm.T} time points give fewer than 2 Fourier frequencies")
    if config.domain == Domain.TIME and config.active_fraction * sm.T > sm.T - 1:
        problems.append(f"active_fraction {config.active_fraction} marks every time point active")
    constant = [label for j, label in enumerate(sm.var_labels) if np.ptp(sm.values[:, j]) == 0]
    if len(constant) == sm.V:
        problems.append("every variable is constant")

    is_valid = not problems
    if not is_valid:
        logger.warning(f"Series matrix validation failed with {len(problems)} problems")
    return is_valid, problems


def validate_binary_matrix(bm: BinaryMatrix) -> Tuple[bool, List[str]]:
    """Check a binary matrix before building a complex.

    An empty matrix is invalid; never-active variables and all-zero rows
    are reported but do not invalidate it.
    """
    problems = []
    if bm.N == 0:
        problems.append("matrix has no observations")
        return False, problems
    never = [label for label, s in zip(bm.var_labels, bm.column_sums()) if s == 0]
    if never:
        problems.append(f"variables never active: {never}")
    empty_rows = int((bm.bits.sum(axis=1) == 0).sum())
    if empty_rows:
        problems.append(f"{empty_rows} observations have no active variable")
    for p in problems:
        logger.debug(p)
    return True, problems


def estimate_enumeration(bm: BinaryMatrix, max_dim: int) -> int:
    """Subset visits ``build_filtered_complex`` would make for this cap."""
    return projected_work(bm.patterns(), max_dim + 2)


def validate_complex_request(bm: BinaryMatrix, max_dim: int, budget: int) -> Tuple[bool, List[str]]:
    """Check a dimension cap against the enumeration budget."""
    problems = []
    if max_dim < 0:
        problems.append("max_dim must be nonnegative")
        return False, problems
    projected = estimate_enumeration(bm, max_dim)
    if projected > budget:
        problems.append(
            f"max_dim {max_dim} needs {projected} subset visits, budget is {budget}; lower --max-dim or raise CT_WORK_BUDGET"
        )
    return not problems, problems


def parse_levels(text: Optional[str]) -> Optional[List[int]]:
    """Parse a comma-separated list of frequency levels such as ``"1,2,5"``.

    Raises:
        ValueError: On non-integer or non-positive entries.
    """
    if text is None or not text.strip():
        return None
    levels = []
    for part in text.split(","):
        part = part.strip()
        if not part.isdigit() or int(part) < 1:
            raise ValueError(f"Invalid frequency level '{part}'; levels are integers >= 1")
        levels.append(int(part))
    return sorted(set(levels), reverse=True)
