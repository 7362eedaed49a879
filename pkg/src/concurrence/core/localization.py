"""
Localization of homology classes by short cycles.

A short d-cycle is the boundary of a (d+1)-simplex: d+2 facets on d+2
variables, the fewest simplices that can close up. At each frequency level
the short cycles present in the frame are sorted into homology classes using
the reduced boundary matrix of the persistence computation. A class with at
least one short representative is narrow; two narrow classes are adjacent
when their sum is narrow too. Classes are not tracked across levels.
"""

from __future__ import annotations

import threading
import time
import weakref
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from loguru import logger

from ..config.settings import get_settings
from ..utils.logging import log_localization_completed, log_performance_metrics
from .complex import FilteredComplex
from .exceptions import ChainNotSupportedError, InsufficientDimensionError, NotACycleError
from .gf2 import Simplex, facets
from .models import ShortCycleRecord
from .persistence import BoundaryReduction, ChainGF2, get_reduction

ClassKey = FrozenSet[int]


def short_cycle_chain(vertices: Iterable[int]) -> ChainGF2:
    """Boundary of the simplex on ``vertices``: the chain of all its facets."""
    verts = tuple(sorted(set(int(v) for v in vertices)))
    if len(verts) < 2:
        raise ValueError("A short cycle needs at least 2 vertices")
    return ChainGF2(frozenset(facets(verts)), len(verts) - 2)


def candidate_short_cycle_count(n_vars: int, d: int) -> int:
    """Number of (d+2)-variable subsets, i.e. possible short d-cycles."""
    return comb(n_vars, d + 2)


def _check_dimension(fc: FilteredComplex, d: int) -> None:
    if d < 0:
        raise ValueError("Homology dimension must be nonnegative")
    if d + 1 > fc.max_dim_stored:
        raise InsufficientDimensionError()


def enumerate_short_cycles(fc: FilteredComplex, f: int, d: int) -> List[Simplex]:
    """Every (d+2)-subset whose facets all lie in the frame at ``f``.

    Each candidate is grown from its first facet: the extra vertex must come
    after that facet and extend every (d-1)-face of it inside the frame.
    """
    _check_dimension(fc, d)
    faces = fc.simplices_of_dim(d, f)
    if not faces:
        return []
    extensions: Dict[Tuple[int, ...], Set[int]] = {}
    for s in faces:
        for i, v in enumerate(s):
            extensions.setdefault(s[:i] + s[i + 1:], set()).add(v)

    found: List[Simplex] = []
    for s in faces:
        candidates: Optional[Set[int]] = None
        for i in range(len(s)):
            ext = extensions.get(s[:i] + s[i + 1:], set())
            candidates = set(ext) if candidates is None else candidates & ext
            if not candidates:
                break
        if candidates:
            found.extend(s + (v,) for v in sorted(candidates) if v > s[-1])
    return sorted(found)


@dataclass
class LevelBasis:
    """Homology basis of one frame in one dimension, read off the reduction.

    ``boundaries`` and ``classes`` are keyed by their lowest (last) simplex
    index; all keys are distinct, so a cycle reduces greedily.
    """

    level: int
    dimension: int
    prefix: int
    boundaries: Dict[int, FrozenSet[int]] = field(default_factory=dict)
    classes: Dict[int, FrozenSet[int]] = field(default_factory=dict)

    @property
    def betti(self) -> int:
        return len(self.classes)

    def class_index(self) -> Dict[int, int]:
        """Position of each class generator in creation order."""
        return {low: i for i, low in enumerate(sorted(self.classes))}

    def coordinates(self, column: Set[int]) -> ClassKey:
        """Class generators whose sum is homologous to the chain."""
        work = set(column)
        key: Set[int] = set()
        while work:
            low = max(work)
            vector = self.boundaries.get(low)
            if vector is None:
                vector = self.classes.get(low)
                if vector is None:
                    raise NotACycleError()
                key.add(low)
            work ^= vector
        return frozenset(key)

    def reduces_to_boundary(self, column: Set[int]) -> bool:
        work = set(column)
        while work:
            vector = self.boundaries.get(max(work))
            if vector is None:
                return False
            work ^= vector
        return True


def build_level_basis(red: BoundaryReduction, f: int, d: int) -> LevelBasis:
    prefix = red.prefix_length(f)
    basis = LevelBasis(level=f, dimension=d, prefix=prefix)
    for tau, column in red.reduced.items():
        if tau < prefix and red.dimension_of(tau) == d + 1:
            basis.boundaries[max(column)] = column
    for sigma in range(prefix):
        if red.dimension_of(sigma) != d or sigma in red.reduced:
            continue
        tau = red.low_to_column.get(sigma)
        if tau is not None:
            if tau >= prefix:
                basis.classes[sigma] = red.reduced[tau]
        elif sigma in red.essential:
            basis.classes[sigma] = red.essential[sigma]
    return basis


_BASES: "weakref.WeakKeyDictionary[FilteredComplex, Dict[Tuple[int, int], LevelBasis]]" = weakref.WeakKeyDictionary()
_BASES_LOCK = threading.Lock()


def level_basis(fc: FilteredComplex, f: int, d: int) -> LevelBasis:
    """Cached homology basis of the frame at ``f`` in dimension ``d``."""
    _check_dimension(fc, d)
    if f < 1:
        raise ValueError(f"Frequency level must be at least 1, got {f}")
    red = get_reduction(fc, d)
    key = (red.prefix_length(f), d)
    with _BASES_LOCK:
        cached = _BASES.setdefault(fc, {}).get(key)
    if cached is not None:
        return cached
    basis = build_level_basis(red, f, d)
    with _BASES_LOCK:
        _BASES[fc][key] = basis
    return basis


def _chain_columns(fc: FilteredComplex, f: int, z: ChainGF2) -> Set[int]:
    red = get_reduction(fc, z.dimension)
    columns = set()
    for s in z.simplices:
        j = red.index.get(s)
        if j is None or red.levels[j] < f:
            raise ChainNotSupportedError()
        columns.add(j)
    return columns


def class_of(fc: FilteredComplex, f: int, z: ChainGF2) -> ClassKey:
    """Homology class of the cycle ``z`` in the frame at ``f``; empty for boundaries.

    Raises:
        InsufficientDimensionError: If dimension ``dim z + 1`` is not stored.
        ChainNotSupportedError: If ``z`` uses a simplex outside the frame.
        NotACycleError: If ``z`` has nonzero boundary.
    """
    _check_dimension(fc, z.dimension)
    if not z:
        return frozenset()
    columns = _chain_columns(fc, f, z)
    if not z.is_cycle():
        raise NotACycleError()
    return level_basis(fc, f, z.dimension).coordinates(columns)


def is_boundary(fc: FilteredComplex, f: int, z: ChainGF2) -> bool:
    """Whether ``z`` bounds a chain of (d+1)-simplices in the frame at ``f``."""
    _check_dimension(fc, z.dimension)
    if not z:
        return True
    columns = _chain_columns(fc, f, z)
    if not z.is_cycle():
        raise NotACycleError()
    return level_basis(fc, f, z.dimension).reduces_to_boundary(columns)


def localize(fc: FilteredComplex, f: int, z: ChainGF2) -> List[Simplex]:
    """Short cycles of the frame at ``f`` homologous to ``z``.

    For a boundary ``z`` this is the list of short cycles that bound.
    """
    key = class_of(fc, f, z)
    return [
        s for s in enumerate_short_cycles(fc, f, z.dimension)
        if class_of(fc, f, short_cycle_chain(s)) == key
    ]


@dataclass(frozen=True)
class NarrowClass:
    """A homology class of one frame with its short representatives."""

    level: int
    dimension: int
    key: ClassKey
    basis_indices: Tuple[int, ...]
    short_cycles: Tuple[Simplex, ...]

    @property
    def representative(self) -> ChainGF2:
        return short_cycle_chain(self.short_cycles[0])


@dataclass
class LevelLocalization:
    """Everything localization knows about one frame and dimension."""

    level: int
    dimension: int
    betti: int
    short_cycles: List[Simplex]
    keys: Dict[Simplex, ClassKey]
    narrow: List[NarrowClass]
    adjacent: List[Tuple[int, int]]

    @property
    def nonbounding(self) -> List[Simplex]:
        return [s for s in self.short_cycles if self.keys[s]]


def localize_level(fc: FilteredComplex, f: int, d: int) -> LevelLocalization:
    """Classify every short d-cycle of the frame at ``f``."""
    basis = level_basis(fc, f, d)
    red = get_reduction(fc, d)
    positions = basis.class_index()
    cycles = enumerate_short_cycles(fc, f, d)
    keys = {
        s: basis.coordinates({red.index[face] for face in facets(s)}) for s in cycles
    }

    groups: Dict[ClassKey, List[Simplex]] = {}
    for s in cycles:
        if keys[s]:
            groups.setdefault(keys[s], []).append(s)
    narrow = [
        NarrowClass(
            level=f,
            dimension=d,
            key=key,
            basis_indices=tuple(sorted(positions[low] for low in key)),
            short_cycles=tuple(members),
        )
        for key, members in sorted(groups.items(), key=lambda kv: kv[1][0])
    ]

    lookup = {n.key: i for i, n in enumerate(narrow)}
    adjacent = [
        (i, j)
        for i in range(len(narrow))
        for j in range(i + 1, len(narrow))
        if (narrow[i].key ^ narrow[j].key) in lookup
    ]
    return LevelLocalization(
        level=f, dimension=d, betti=basis.betti, short_cycles=cycles,
        keys=keys, narrow=narrow, adjacent=adjacent,
    )


def narrow_classes(fc: FilteredComplex, f: int, d: int) -> List[NarrowClass]:
    """Nonzero classes of ``H_d`` at ``f`` that have a short representative."""
    return localize_level(fc, f, d).narrow


def adjacent_pairs(fc: FilteredComplex, f: int, d: int) -> List[Tuple[NarrowClass, NarrowClass]]:
    """Unordered pairs of narrow classes whose sum is narrow as well."""
    result = localize_level(fc, f, d)
    return [(result.narrow[i], result.narrow[j]) for i, j in result.adjacent]


def _run_levels(fc: FilteredComplex, d: int, levels: Sequence[int], threads: Optional[int]) -> List[LevelLocalization]:
    _check_dimension(fc, d)
    if threads is None:
        threads = get_settings().threads
    get_reduction(fc, d)
    if threads <= 1 or len(levels) <= 1:
        return [localize_level(fc, f, d) for f in levels]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda f: localize_level(fc, f, d), levels))


def _integer_span(levels: List[int], i: int) -> range:
    # frames are constant between consecutive distinct counts
    lower = levels[i + 1] if i + 1 < len(levels) else 0
    return range(lower + 1, levels[i] + 1)


def records_from_levels(fc: FilteredComplex, d: int, results: Sequence[LevelLocalization]) -> List[ShortCycleRecord]:
    levels = fc.levels()
    by_level = {r.level: r for r in results}
    nonbounding: Dict[Simplex, Set[int]] = {}
    for i, f in enumerate(levels):
        result = by_level.get(f)
        if result is None:
            continue
        span = _integer_span(levels, i)
        for s in result.nonbounding:
            nonbounding.setdefault(s, set()).update(span)

    records = []
    for s in sorted(nonbounding):
        found = sorted(nonbounding[s])
        contiguous = found == list(range(found[0], found[-1] + 1))
        if not contiguous:
            logger.warning(f"Short cycle {fc.labels_of(s)} has non-contiguous levels {found}")
        records.append(
            ShortCycleRecord(
                vertices=s,
                labels=fc.labels_of(s),
                dimension=d,
                levels_nonbounding=tuple(found),
                contiguous=contiguous,
            )
        )
    return records


def cycle_lifespans(fc: FilteredComplex, d: int, threads: Optional[int] = None) -> List[ShortCycleRecord]:
    """Integer levels at which each short d-cycle is present and non-bounding.

    Subsets that never form a non-bounding short cycle are omitted.
    """
    return records_from_levels(fc, d, _run_levels(fc, d, fc.levels(), threads))


@dataclass
class LocalizationReport:
    """Per-level localization of one dimension plus the short-cycle table."""

    dimension: int
    var_labels: Tuple[str, ...]
    levels: List[LevelLocalization]
    records: List[ShortCycleRecord]

    @property
    def narrow_total(self) -> int:
        return sum(len(level.narrow) for level in self.levels)

    def to_dict(self) -> Dict[str, Any]:
        def names(s: Simplex) -> List[str]:
            return [self.var_labels[v] for v in s]

        return {
            "dimension": self.dimension,
            "var_labels": list(self.var_labels),
            "levels": [
                {
                    "level": level.level,
                    "betti": level.betti,
                    "short_cycle_count": len(level.short_cycles),
                    "narrow_classes": [
                        {
                            "index": i,
                            "basis": list(n.basis_indices),
                            "short_cycles": [names(s) for s in n.short_cycles],
                        }
                        for i, n in enumerate(level.narrow)
                    ],
                    "adjacent_pairs": [list(pair) for pair in level.adjacent],
                }
                for level in self.levels
            ],
            "short_cycle_records": [
                {
                    "vertices": list(r.labels),
                    "dimension": r.dimension,
                    "levels_nonbounding": list(r.levels_nonbounding),
                    "cycle_lifespan": r.cycle_lifespan,
                    "contiguous": r.contiguous,
                }
                for r in self.records
            ],
        }


def build_localization_report(
    fc: FilteredComplex,
    d: int,
    levels: Optional[Iterable[int]] = None,
    threads: Optional[int] = None,
) -> LocalizationReport:
    """Localize dimension ``d`` at the requested levels (default: every distinct count).

    Short-cycle records always cover every level so that lifespans are complete.
    """
    started = time.perf_counter()
    all_levels = fc.levels()
    chosen = all_levels if levels is None else sorted(set(levels), reverse=True)
    bad = [f for f in chosen if f < 1]
    if bad:
        raise ValueError(f"Frequency levels must be at least 1, got {bad}")
    wanted = sorted(set(all_levels) | set(chosen), reverse=True)
    results = _run_levels(fc, d, wanted, threads)
    by_level = {r.level: r for r in results}

    report = LocalizationReport(
        dimension=d,
        var_labels=fc.var_labels,
        levels=[by_level[f] for f in chosen],
        records=records_from_levels(fc, d, results),
    )
    log_localization_completed(d, len(report.levels), report.narrow_total, len(report.records))
    log_performance_metrics("localization", (time.perf_counter() - started) * 1000, dimension=d)
    return report
