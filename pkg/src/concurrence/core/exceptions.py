"""
Exception hierarchy for the concurrence toolkit.

Every error carries a stable ``error_code`` and the process ``exit_code``
the CLI should use when the error escapes a command.
"""

from datetime import datetime
from pathlib import Path
from typing import Optional, Union


class ConcurrenceError(Exception):
    """Base exception for concurrence toolkit errors."""

    exit_code: int = 2
    default_code: str = "concurrence_error"

    def __init__(self, message: str, error_code: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.error_code = error_code or self.default_code
        self.timestamp = datetime.now()


class DataValidationError(ConcurrenceError):
    """Raised when an input table cannot be parsed or fails validation."""

    default_code = "data_validation"

    def __init__(
        self,
        message: str,
        source: Optional[Union[str, Path]] = None,
        line: Optional[int] = None,
        error_code: Optional[str] = None,
    ):
        self.source = str(source) if source is not None else None
        self.line = line
        if self.source is not None and line is not None:
            message = f"{self.source}:{line}: {message}"
        elif self.source is not None:
            message = f"{self.source}: {message}"
        super().__init__(message, error_code)


class UndefinedRobustCVError(ConcurrenceError):
    """Raised when the robust CV has a zero median."""

    default_code = "undefined_robust_cv"

    def __init__(self, message: str = "undefined robust CV"):
        super().__init__(message)


class NoVariablesRetainedError(ConcurrenceError):
    """Raised when variability screening drops every variable."""

    default_code = "no_variables_retained"

    def __init__(self, message: str = "no variables retained"):
        super().__init__(message)


class InsufficientDimensionError(ConcurrenceError):
    """Raised when a complex was built with too small a dimension cap."""

    default_code = "insufficient_dimension"

    def __init__(self, message: str = "insufficient stored dimension"):
        super().__init__(message)


class UncappedComplexRequiredError(ConcurrenceError):
    """Raised when Moebius inversion needs subsets the complex did not store."""

    default_code = "uncapped_complex_required"

    def __init__(self, message: str = "full table requires uncapped complex"):
        super().__init__(message)


class ChainNotSupportedError(ConcurrenceError):
    """Raised when a chain uses simplices outside the requested frame."""

    default_code = "chain_not_supported"

    def __init__(self, message: str = "chain not supported in frame"):
        super().__init__(message)


class NotACycleError(ConcurrenceError):
    """Raised when a chain with nonzero boundary is passed as a cycle."""

    default_code = "not_a_cycle"

    def __init__(self, message: str = "chain is not a cycle"):
        super().__init__(message)


class WorkBudgetExceededError(ConcurrenceError):
    """Raised when a computation is projected to exceed its work budget."""

    exit_code = 3
    default_code = "work_budget_exceeded"

    def __init__(
        self,
        message: str = "dimension cap too generous for these active-set sizes",
        budget: Optional[int] = None,
        projected: Optional[int] = None,
    ):
        super().__init__(message)
        self.budget = budget
        self.projected = projected


class EulerBudgetExceededError(WorkBudgetExceededError):
    """Raised when inclusion-exclusion over maximal faces runs out of budget."""

    default_code = "euler_budget_exceeded"

    def __init__(
        self,
        message: str = "Euler budget exceeded",
        budget: Optional[int] = None,
        projected: Optional[int] = None,
    ):
        super().__init__(message, budget=budget, projected=projected)
