"""
Logging configuration and utilities for the concurrence toolkit.

This module provides centralized loguru setup plus structured event helpers
for the stages of a concurrence analysis: loading a matrix, screening
variables, building the filtered complex, computing persistence and
localizing classes.
"""

import sys
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Union

from loguru import logger


def setup_logging(
    level: str = "INFO",
    log_file: Optional[Union[str, Path]] = None,
    rotation: str = "10 MB",
    retention: str = "30 days",
    format_string: Optional[str] = None,
    enable_console: bool = True,
    enable_file: bool = True,
) -> None:
    """Set up structured logging for the concurrence toolkit.

    Args:
        level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL).
        log_file: Path to log file. If None, uses logs/concurrence.log.
        rotation: Log file rotation policy.
        retention: Log file retention policy.
        format_string: Custom log format string.
        enable_console: Whether to log to stderr.
        enable_file: Whether to log to a rotating file.
    """
    logger.remove()

    if format_string is None:
        format_string = (
            "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
            "<level>{level: <8}</level> | "
            "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> | "
            "<level>{message}</level>"
        )

    # stdout is reserved for command output
    if enable_console:
        logger.add(
            sys.stderr,
            format=format_string,
            level=level,
            colorize=True,
            backtrace=True,
            diagnose=False,
        )

    if enable_file:
        if log_file is None:
            log_file = Path("logs/concurrence.log")
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)

        logger.add(
            log_path,
            format=format_string,
            level=level,
            rotation=rotation,
            retention=retention,
            backtrace=True,
            diagnose=False,
            serialize=False,
        )

    logger.debug(f"Logging initialized at level {level}")
    if enable_file:
        logger.debug(f"Log file: {log_file}")


def log_matrix_loaded(source: str, n_obs: int, n_vars: int, kind: str) -> None:
    """Log that a series or binary matrix was read.

    Args:
        source: Path or fixture name the matrix came from.
        n_obs: Number of rows.
        n_vars: Number of variables.
        kind: "series" or "binary".
    """
    logger.info(
        f"Loaded {kind} matrix {n_obs}x{n_vars} from {source}",
        extra={
            "source": source,
            "n_obs": n_obs,
            "n_vars": n_vars,
            "kind": kind,
            "event_type": "matrix_loaded",
        },
    )


def log_variables_dropped(dropped: Sequence[str], retained: int) -> None:
    """Log the outcome of variability screening."""
    logger.info(
        f"Dropped {len(dropped)} low-variability variables, {retained} retained",
        extra={
            "dropped": list(dropped),
            "retained": retained,
            "event_type": "variables_dropped",
        },
    )


def log_complex_built(n_simplices: int, max_dim_stored: int, max_level: int, distinct_rows: int) -> None:
    """Log filtered complex construction.

    Args:
        n_simplices: Number of stored simplices.
        max_dim_stored: Highest stored simplex dimension.
        max_level: Largest concurrence count.
        distinct_rows: Number of distinct nonempty active sets.
    """
    logger.info(
        f"Built filtered complex with {n_simplices} simplices up to dimension {max_dim_stored}",
        extra={
            "n_simplices": n_simplices,
            "max_dim_stored": max_dim_stored,
            "max_level": max_level,
            "distinct_rows": distinct_rows,
            "event_type": "complex_built",
        },
    )


def log_persistence_computed(max_dim: int, pair_counts: Dict[int, int]) -> None:
    """Log diagram sizes per dimension."""
    rendered = ", ".join(f"dim{d}={n}" for d, n in sorted(pair_counts.items()))
    logger.info(
        f"Persistence computed through dimension {max_dim}: {rendered}",
        extra={
            "max_dim": max_dim,
            "pair_counts": pair_counts,
            "event_type": "persistence_computed",
        },
    )


def log_localization_completed(dimension: int, levels: int, narrow: int, records: int) -> None:
    """Log a finished localization report.

    Args:
        dimension: Homology dimension localized.
        levels: Number of frequency levels examined.
        narrow: Total narrow classes over all levels.
        records: Number of short-cycle records.
    """
    logger.info(
        f"Localized dimension {dimension} over {levels} levels",
        extra={
            "dimension": dimension,
            "levels": levels,
            "narrow_classes": narrow,
            "short_cycle_records": records,
            "event_type": "localization_completed",
        },
    )


def log_budget_exceeded(operation: str, budget: Optional[int], projected: Optional[int]) -> None:
    """Log a work budget refusal."""
    logger.error(
        f"{operation} exceeds work budget ({projected} > {budget})",
        extra={
            "operation": operation,
            "budget": budget,
            "projected": projected,
            "event_type": "budget_exceeded",
        },
    )


def log_performance_metrics(operation: str, duration_ms: float, **kwargs: Any) -> None:
    """Log performance metrics.

    Args:
        operation: Name of the operation being measured.
        duration_ms: Duration in milliseconds.
        **kwargs: Additional metrics to log.
    """
    logger.debug(
        f"{operation} took {duration_ms:.1f} ms",
        extra={
            "operation": operation,
            "duration_ms": duration_ms,
            "event_type": "performance_metrics",
            **kwargs,
        },
    )


class LoggingContext:
    """Context manager for adding structured logging context."""

    def __init__(self, **context: Any):
        self.context = context
        self._manager = None

    def __enter__(self):
        self._manager = logger.contextualize(**self.context)
        self._manager.__enter__()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if self._manager is not None:
            self._manager.__exit__(exc_type, exc_val, exc_tb)
            self._manager = None
