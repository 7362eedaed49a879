"""
Concurrence analysis pipeline.

This module provides the ConcurrencePipeline class that ties the stages of
an analysis together: screening and dichotomizing continuous series,
building the filtered complex, computing persistence and its summaries, and
localizing classes by short cycles.
"""

import time
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional

from loguru import logger

from ..config.loader import AnalysisPreset, PresetLoader
from ..config.settings import ConcurrenceSettings, get_settings
from ..signal.dichotomize import dichotomize
from ..signal.variability import drop_low_variability
from ..utils.logging import log_performance_metrics
from .complex import FilteredComplex, build_filtered_complex
from .localization import LocalizationReport, build_localization_report
from .models import BinaryMatrix, DichotomizeConfig, MomentVector, PersistenceDiagram, SeriesMatrix
from .persistence import compute_persistence
from .summaries import all_moments, euler_curve


@dataclass
class DichotomizationResult:
    """Binary matrix plus the screening outcome."""
    binary: BinaryMatrix
    dropped: List[str]
    retained: List[str]
    config: DichotomizeConfig


@dataclass
class AnalysisResult:
    """Everything computed for one binary dataset."""
    complex: FilteredComplex
    diagram: PersistenceDiagram
    moments: List[MomentVector]
    euler: Dict[int, int] = field(default_factory=dict)
    localization: Dict[int, LocalizationReport] = field(default_factory=dict)


class ConcurrencePipeline:
    """Runs concurrence analyses with shared settings and presets."""

    def __init__(
        self,
        settings: Optional[ConcurrenceSettings] = None,
        preset_loader: Optional[PresetLoader] = None,
    ):
        """Initialize the pipeline.

        Args:
            settings: Budgets and thread count. If None, reads the environment.
            preset_loader: Preset source. Created on first use if None.
        """
        self.settings = settings or get_settings()
        self._preset_loader = preset_loader

    @property
    def presets(self) -> PresetLoader:
        if self._preset_loader is None:
            self._preset_loader = PresetLoader()
        return self._preset_loader

    def get_preset(self, name: str) -> AnalysisPreset:
        return self.presets.get_preset(name)

    def dichotomize(self, sm: SeriesMatrix, config: DichotomizeConfig) -> DichotomizationResult:
        """Drop low-variability variables, then dichotomize the rest."""
        started = time.perf_counter()
        retained, dropped = drop_low_variability(sm, config.drop_fraction)
        binary = dichotomize(retained, config)
        log_performance_metrics(
            "dichotomize",
            (time.perf_counter() - started) * 1000,
            domain=config.domain.value,
            observations=binary.N,
            variables=binary.V,
        )
        return DichotomizationResult(
            binary=binary, dropped=dropped, retained=list(retained.var_labels), config=config
        )

    def build_complex(self, bm: BinaryMatrix, max_dim: int) -> FilteredComplex:
        started = time.perf_counter()
        fc = build_filtered_complex(bm, max_dim, budget=self.settings.work_budget)
        log_performance_metrics("build complex", (time.perf_counter() - started) * 1000, simplices=len(fc))
        return fc

    def persist(self, fc: FilteredComplex, max_dim: int) -> PersistenceDiagram:
        started = time.perf_counter()
        diagram = compute_persistence(fc, max_dim)
        log_performance_metrics("persistence", (time.perf_counter() - started) * 1000, pairs=len(diagram.pairs))
        return diagram

    def summarize(
        self,
        fc: FilteredComplex,
        diagram: PersistenceDiagram,
        euler_levels: Optional[Iterable[int]] = None,
        threads: Optional[int] = None,
    ) -> AnalysisResult:
        """Moments of every dimension, plus Euler characteristics when levels are given."""
        started = time.perf_counter()
        vectors = all_moments(diagram)
        euler: Dict[int, int] = {}
        if euler_levels:
            threads = threads or self.settings.threads
            euler = euler_curve(fc, euler_levels, budget=self.settings.euler_budget, threads=threads)
        log_performance_metrics("summaries", (time.perf_counter() - started) * 1000, euler_levels=len(euler))
        return AnalysisResult(complex=fc, diagram=diagram, moments=vectors, euler=euler)

    def localize(
        self,
        fc: FilteredComplex,
        dims: Iterable[int],
        levels: Optional[Iterable[int]] = None,
        threads: Optional[int] = None,
    ) -> Dict[int, LocalizationReport]:
        threads = threads or self.settings.threads
        chosen = list(levels) if levels is not None else None
        return {d: build_localization_report(fc, d, chosen, threads) for d in sorted(set(dims))}

    def run(
        self,
        bm: BinaryMatrix,
        max_dim: int,
        localize_dims: Iterable[int] = (),
        euler_levels: Optional[Iterable[int]] = None,
        threads: Optional[int] = None,
    ) -> AnalysisResult:
        """Full analysis of one binary dataset.

        Args:
            bm: Binary observations.
            max_dim: Highest homology dimension.
            localize_dims: Dimensions to localize.
            euler_levels: Levels at which to report Euler characteristics.
            threads: Worker threads for per-level localization and Euler characteristics.

        Returns:
            AnalysisResult with every computed artifact.
        """
        logger.info(f"Analysing {bm.N}x{bm.V} binary matrix through dimension {max_dim}")
        fc = self.build_complex(bm, max_dim)
        diagram = self.persist(fc, max_dim)
        result = self.summarize(fc, diagram, euler_levels, threads)
        dims = list(localize_dims)
        if dims:
            result.localization = self.localize(fc, dims, threads=threads)
        return result
