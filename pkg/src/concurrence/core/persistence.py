"""
Persistent homology of the descending frequency filtration over Z/2.

Simplices enter the filtration in order of decreasing count; ties go to
lower dimension first and then to lexicographic vertex order, so every run
pairs the same simplices. The boundary matrix is reduced column by column
with sparse set columns, highest dimension first, clearing the columns of
simplices already known to create a class.
"""

from __future__ import annotations

import hashlib
import json
import threading
import time
import weakref
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Optional, Set

from ..utils.logging import log_performance_metrics, log_persistence_computed
from .complex import FilteredComplex
from .exceptions import InsufficientDimensionError
from .gf2 import Simplex, add_columns, facets, gf2_rank
from .models import PersistenceDiagram, PersistencePair


@dataclass(frozen=True)
class ChainGF2:
    """Formal Z/2 sum of same-dimension simplices."""

    simplices: FrozenSet[Simplex]
    dimension: int

    def __post_init__(self):
        if self.dimension < 0:
            raise ValueError("Chain dimension must be nonnegative")
        wrong = [s for s in self.simplices if len(s) != self.dimension + 1]
        if wrong:
            raise ValueError(f"Simplices {sorted(wrong)} do not have dimension {self.dimension}")

    @classmethod
    def of(cls, simplices: Iterable[Iterable[int]], dimension: Optional[int] = None) -> "ChainGF2":
        """Build a chain, cancelling simplices listed an even number of times."""
        support: Set[Simplex] = set()
        for s in simplices:
            support ^= {tuple(sorted(s))}
        if dimension is None:
            if not support:
                raise ValueError("The dimension of an empty chain must be given")
            dimension = len(next(iter(support))) - 1
        return cls(frozenset(support), dimension)

    @classmethod
    def zero(cls, dimension: int) -> "ChainGF2":
        return cls(frozenset(), dimension)

    def __add__(self, other: "ChainGF2") -> "ChainGF2":
        if not isinstance(other, ChainGF2):
            return NotImplemented
        if other.dimension != self.dimension:
            raise ValueError("Cannot add chains of different dimensions")
        return ChainGF2(self.simplices ^ other.simplices, self.dimension)

    def __bool__(self) -> bool:
        return bool(self.simplices)

    def __len__(self) -> int:
        return len(self.simplices)

    def __iter__(self) -> Iterator[Simplex]:
        return iter(sorted(self.simplices))

    def __contains__(self, simplex: object) -> bool:
        return simplex in self.simplices

    def boundary(self) -> "ChainGF2":
        """Boundary chain; vertices have zero boundary."""
        if self.dimension == 0:
            return ChainGF2.zero(0)
        support: Set[Simplex] = set()
        for s in self.simplices:
            for face in facets(s):
                support ^= {face}
        return ChainGF2(frozenset(support), self.dimension - 1)

    def is_cycle(self) -> bool:
        return self.dimension == 0 or not self.boundary()


def filtration_order(fc: FilteredComplex, top_dim: int) -> List[Simplex]:
    """Stored simplices up to ``top_dim``: count descending, dimension ascending, then lexicographic."""
    return sorted(
        (s for s in fc.counts if len(s) - 1 <= top_dim),
        key=lambda s: (-fc.counts[s], len(s), s),
    )


@dataclass
class BoundaryReduction:
    """Reduced boundary matrix of one filtration, kept for pairing and localization.

    Attributes:
        max_dim: Highest homology dimension the reduction answers for.
        order: Simplices in filtration order; column ``j`` is ``order[j]``.
        index: Inverse of ``order``.
        levels: Count of each column's simplex.
        reduced: Nonzero reduced columns (destroyers), by column.
        low_to_column: Pivot row of each destroyer, mapped back to the column.
        essential: Cycle representatives of creators that are never killed.
    """

    max_dim: int
    order: List[Simplex]
    index: Dict[Simplex, int]
    levels: List[int]
    reduced: Dict[int, FrozenSet[int]] = field(default_factory=dict)
    low_to_column: Dict[int, int] = field(default_factory=dict)
    essential: Dict[int, FrozenSet[int]] = field(default_factory=dict)

    def dimension_of(self, j: int) -> int:
        return len(self.order[j]) - 1

    def prefix_length(self, f: int) -> int:
        """Number of columns whose simplex is in the frame at ``f``."""
        lo, hi = 0, len(self.levels)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.levels[mid] >= f:
                lo = mid + 1
            else:
                hi = mid
        return lo

    def creators(self, d: int) -> Iterator[int]:
        """Columns of dimension ``d`` whose simplex creates a class."""
        for j, s in enumerate(self.order):
            if len(s) == d + 1 and j not in self.reduced:
                yield j

    def pairs(self) -> List[PersistencePair]:
        out: List[PersistencePair] = []
        for low, j in sorted(self.low_to_column.items()):
            birth, death = self.levels[low], self.levels[j]
            if birth > death:
                out.append(PersistencePair(dimension=self.dimension_of(low), birth=birth, death=death))
        for i in sorted(self.essential):
            out.append(PersistencePair(dimension=self.dimension_of(i), birth=self.levels[i], death=0))
        return out


def reduce_boundary(fc: FilteredComplex, max_dim: int) -> BoundaryReduction:
    """Reduce the boundary matrix of simplices up to dimension ``max_dim + 1``."""
    order = filtration_order(fc, max_dim + 1)
    index = {s: j for j, s in enumerate(order)}
    levels = [fc.counts[s] for s in order]
    red = BoundaryReduction(max_dim=max_dim, order=order, index=index, levels=levels)

    by_dim: Dict[int, List[int]] = {}
    for j, s in enumerate(order):
        by_dim.setdefault(len(s) - 1, []).append(j)

    cleared: Set[int] = set()
    cycles: Dict[int, Set[int]] = {}
    for d in range(max_dim + 1, -1, -1):
        track = d <= max_dim
        pivots: Dict[int, int] = {}
        work: Dict[int, Set[int]] = {}
        chains: Dict[int, Set[int]] = {}
        for j in by_dim.get(d, []):
            if j in cleared:
                continue
            column = {index[face] for face in facets(order[j])} if d > 0 else set()
            chain = {j} if track else set()
            while column:
                low = max(column)
                k = pivots.get(low)
                if k is None:
                    break
                add_columns(column, work[k])
                if track:
                    add_columns(chain, chains[k])
            if column:
                low = max(column)
                pivots[low] = j
                work[j] = column
                red.reduced[j] = frozenset(column)
                red.low_to_column[low] = j
                cleared.add(low)
            elif track:
                cycles[j] = chain
            if track and column:
                chains[j] = chain

    for j, chain in cycles.items():
        if j not in red.low_to_column:
            red.essential[j] = frozenset(chain)
    return red


_CACHE: "weakref.WeakKeyDictionary[FilteredComplex, Dict[int, BoundaryReduction]]" = weakref.WeakKeyDictionary()
_CACHE_LOCK = threading.Lock()


def get_reduction(fc: FilteredComplex, max_dim: int) -> BoundaryReduction:
    """Reduction covering dimensions up to ``max_dim``, shared per complex."""
    if fc.max_dim_stored < max_dim + 1:
        raise InsufficientDimensionError()
    with _CACHE_LOCK:
        cached = _CACHE.setdefault(fc, {})
        usable = [m for m in cached if m >= max_dim]
        if usable:
            return cached[min(usable)]
    started = time.perf_counter()
    red = reduce_boundary(fc, max_dim)
    log_performance_metrics(
        "boundary reduction",
        (time.perf_counter() - started) * 1000,
        columns=len(red.order),
        destroyers=len(red.reduced),
    )
    with _CACHE_LOCK:
        _CACHE.setdefault(fc, {})[max_dim] = red
    return red


def compute_persistence(fc: FilteredComplex, max_dim: int) -> PersistenceDiagram:
    """Persistence diagram of dimensions ``0..max_dim``.

    Args:
        fc: Filtered complex storing at least dimension ``max_dim + 1``.
        max_dim: Highest homology dimension reported.

    Returns:
        Diagram whose pairs are (dimension, creator count, destroyer count),
        with death 0 for classes alive in the level-1 frame. Pairs with equal
        birth and death are omitted.

    Raises:
        InsufficientDimensionError: If the complex was built with a smaller cap.
    """
    if max_dim < 0:
        raise ValueError(f"max_dim must be nonnegative, got {max_dim}")
    if fc.max_dim_stored < max_dim + 1:
        raise InsufficientDimensionError()
    red = get_reduction(fc, max_dim)
    pairs = [p for p in red.pairs() if p.dimension <= max_dim]
    counts = {d: sum(1 for p in pairs if p.dimension == d) for d in range(max_dim + 1)}
    log_persistence_computed(max_dim, counts)
    return PersistenceDiagram(pairs=tuple(pairs), max_dim=max_dim, provenance=diagram_provenance(fc, max_dim))


def diagram_provenance(fc: FilteredComplex, max_dim: int) -> Dict[str, Any]:
    """Configuration plus sha256 digests of that configuration and of the data.

    ``config_hash`` covers the dimension cap and filtration order;
    ``data_digest`` covers the grouped active sets with their
    multiplicities, so it does not depend on row order.
    """
    config = {
        "max_dim": max_dim,
        "max_dim_stored": fc.max_dim_stored,
        "filtration_order": "count_desc,dim_asc,lex",
        "coefficients": "Z/2",
    }
    data = {
        "var_labels": list(fc.var_labels),
        "n_obs": fc.n_obs,
        "patterns": sorted([list(p), m] for p, m in fc.patterns.items()),
    }
    return {
        **config,
        "n_obs": fc.n_obs,
        "var_labels": list(fc.var_labels),
        "config_hash": _sha256_json(config),
        "data_digest": _sha256_json(data),
    }


def _sha256_json(value: Any) -> str:
    encoded = json.dumps(value, sort_keys=True, separators=(",", ":")).encode("utf-8")
    return hashlib.sha256(encoded).hexdigest()


def betti(fc: FilteredComplex, f: int, d: int) -> int:
    """Rank of ``H_d`` of the frame at ``f``, from boundary ranks of that frame alone.

    Raises:
        InsufficientDimensionError: If ``d + 1`` simplices are not stored.
    """
    if f < 1:
        raise ValueError(f"Frequency level must be at least 1, got {f}")
    if d < 0:
        raise ValueError("Homology dimension must be nonnegative")
    if d > fc.max_dim_stored - 1:
        raise InsufficientDimensionError()
    cells = {k: fc.simplices_of_dim(k, f) for k in (d - 1, d, d + 1) if k >= 0}
    n_d = len(cells[d])
    if n_d == 0:
        return 0
    return n_d - _boundary_rank(cells, d) - _boundary_rank(cells, d + 1)


def _boundary_rank(cells: Dict[int, List[Simplex]], k: int) -> int:
    if k == 0 or not cells.get(k):
        return 0
    row_index = {s: i for i, s in enumerate(cells[k - 1])}
    return gf2_rank(sum(1 << row_index[face] for face in facets(s)) for s in cells[k])


def betti_curve(fc: FilteredComplex, d: int) -> Dict[int, int]:
    """Betti number of dimension ``d`` at every level present in the complex."""
    return {f: betti(fc, f, d) for f in fc.levels()}

