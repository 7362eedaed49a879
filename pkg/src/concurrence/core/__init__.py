"""Core concurrence homology: complexes, persistence, summaries and localization."""

from .complex import (
    FilteredComplex,
    build_filtered_complex,
    concurrence_count,
    contingency_from_counts,
    contingency_table,
    frame,
    loglinear_interaction,
    loglinear_term_count,
    make_simplex,
)
from .exceptions import (
    ChainNotSupportedError,
    ConcurrenceError,
    DataValidationError,
    EulerBudgetExceededError,
    InsufficientDimensionError,
    NoVariablesRetainedError,
    NotACycleError,
    UncappedComplexRequiredError,
    UndefinedRobustCVError,
    WorkBudgetExceededError,
)
from .localization import (
    NarrowClass,
    adjacent_pairs,
    build_localization_report,
    candidate_short_cycle_count,
    cycle_lifespans,
    enumerate_short_cycles,
    is_boundary,
    localize,
    narrow_classes,
    short_cycle_chain,
)
from .models import (
    BinaryMatrix,
    DichotomizeConfig,
    Domain,
    MomentVector,
    NullConfig,
    PersistenceDiagram,
    PersistencePair,
    RunManifest,
    SeriesMatrix,
    ShortCycleRecord,
)
from .persistence import ChainGF2, betti, compute_persistence
from .summaries import euler_characteristic, euler_curve, moments

__all__ = [
    "FilteredComplex",
    "build_filtered_complex",
    "concurrence_count",
    "contingency_from_counts",
    "contingency_table",
    "frame",
    "loglinear_interaction",
    "loglinear_term_count",
    "make_simplex",
    "ChainNotSupportedError",
    "ConcurrenceError",
    "DataValidationError",
    "EulerBudgetExceededError",
    "InsufficientDimensionError",
    "NoVariablesRetainedError",
    "NotACycleError",
    "UncappedComplexRequiredError",
    "UndefinedRobustCVError",
    "WorkBudgetExceededError",
    "NarrowClass",
    "adjacent_pairs",
    "build_localization_report",
    "candidate_short_cycle_count",
    "cycle_lifespans",
    "enumerate_short_cycles",
    "is_boundary",
    "localize",
    "narrow_classes",
    "short_cycle_chain",
    "BinaryMatrix",
    "DichotomizeConfig",
    "Domain",
    "MomentVector",
    "NullConfig",
    "PersistenceDiagram",
    "PersistencePair",
    "RunManifest",
    "SeriesMatrix",
    "ShortCycleRecord",
    "ChainGF2",
    "betti",
    "compute_persistence",
    "euler_characteristic",
    "euler_curve",
    "moments",
]
