"""
Filtered Curto-Itskov complexes.

A concurrence is a set of variables that are active together in one
observation; its count is the number of observations containing it, also
as part of a larger active set. The filtered complex stores every
concurrence up to a dimension cap together with its count, and the frame
at frequency level ``f`` is the subcomplex of concurrences counted at least
``f`` times. Frames shrink as ``f`` grows, so the filtration runs downward
from the largest count to 1.
"""

from __future__ import annotations

import threading
from collections import Counter
from itertools import combinations
from math import comb
from types import MappingProxyType
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from ..config.settings import get_settings
from ..utils.logging import log_budget_exceeded, log_complex_built
from .exceptions import (
    EulerBudgetExceededError,
    UncappedComplexRequiredError,
    WorkBudgetExceededError,
)
from .gf2 import Simplex, bits_of, bitset, faces_up_to
from .models import BinaryMatrix

VariableRef = Union[int, str]


def make_simplex(vertices: Iterable[int], n_vars: Optional[int] = None) -> Simplex:
    """Normalize a vertex collection into a sorted simplex key.

    Raises:
        ValueError: If the set is empty, repeats a vertex, or has an index
            outside ``[0, n_vars)``.
    """
    verts = tuple(sorted(int(v) for v in vertices))
    if not verts:
        raise ValueError("A simplex needs at least one vertex")
    if len(set(verts)) != len(verts):
        raise ValueError(f"Repeated vertex in {verts}")
    if verts[0] < 0 or (n_vars is not None and verts[-1] >= n_vars):
        raise ValueError(f"Vertex index out of range in {verts}")
    return verts


def resolve_variables(var_labels: Sequence[str], variables: Iterable[VariableRef]) -> Simplex:
    """Turn labels or indices into a sorted tuple of indices."""
    out = []
    for v in variables:
        if isinstance(v, str):
            if v not in var_labels:
                raise ValueError(f"Unknown variable label '{v}'")
            out.append(var_labels.index(v))
        else:
            out.append(int(v))
    if len(set(out)) != len(out):
        raise ValueError("Repeated variable")
    if any(i < 0 or i >= len(var_labels) for i in out):
        raise ValueError(f"Variable index out of range: {out}")
    return tuple(sorted(out))


class FilteredComplex:
    """Concurrence counts of every stored simplex, plus the source patterns.

    Attributes:
        counts: Read-only map from simplex to its concurrence count.
        var_labels: Variable labels, indexed by vertex.
        max_dim_stored: Highest simplex dimension enumerated.
        max_level: Largest count present (0 for an empty complex).
        n_obs: Number of observations, all-zero rows included.
        patterns: Distinct nonempty active sets with their multiplicities.
    """

    def __init__(
        self,
        counts: Mapping[Simplex, int],
        var_labels: Sequence[str],
        max_dim_stored: int,
        n_obs: int,
        patterns: Mapping[Simplex, int],
    ):
        self.counts: Mapping[Simplex, int] = MappingProxyType(dict(counts))
        self.var_labels: Tuple[str, ...] = tuple(var_labels)
        self.max_dim_stored = int(max_dim_stored)
        self.n_obs = int(n_obs)
        self.patterns: Mapping[Simplex, int] = MappingProxyType(dict(patterns))
        self.max_level = max(self.counts.values(), default=0)
        self._closed: Optional[Dict[int, int]] = None
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self.counts)

    def __contains__(self, simplex: object) -> bool:
        return simplex in self.counts

    def __repr__(self) -> str:
        return (
            f"FilteredComplex(n_vars={self.n_vars}, simplices={len(self.counts)}, "
            f"max_dim_stored={self.max_dim_stored}, max_level={self.max_level})"
        )

    @property
    def n_vars(self) -> int:
        return len(self.var_labels)

    def count(self, simplex: Sequence[int]) -> int:
        """Concurrence count of any vertex set, stored or not."""
        key = tuple(simplex)
        if len(key) - 1 <= self.max_dim_stored:
            return self.counts.get(key, 0)
        mask = bitset(key)
        return sum(m for p, m in self.patterns.items() if bitset(p) & mask == mask)

    def labels_of(self, simplex: Sequence[int]) -> Tuple[str, ...]:
        return tuple(self.var_labels[v] for v in simplex)

    def levels(self) -> List[int]:
        """Distinct counts present, largest first."""
        return sorted(set(self.counts.values()), reverse=True)

    def frame(self, f: int) -> FrozenSet[Simplex]:
        if f < 1:
            raise ValueError(f"Frequency level must be at least 1, got {f}")
        return frozenset(s for s, c in self.counts.items() if c >= f)

    def simplices_of_dim(self, d: int, f: int = 1) -> List[Simplex]:
        """Stored ``d``-simplices of the frame at ``f``, lexicographically sorted."""
        if f < 1:
            raise ValueError(f"Frequency level must be at least 1, got {f}")
        return sorted(s for s, c in self.counts.items() if len(s) == d + 1 and c >= f)

    def f_vector(self, f: int = 1) -> List[int]:
        """Number of simplices per stored dimension in the frame at ``f``."""
        if f < 1:
            raise ValueError(f"Frequency level must be at least 1, got {f}")
        vector = [0] * (self.max_dim_stored + 1)
        for s, c in self.counts.items():
            if c >= f:
                vector[len(s) - 1] += 1
        return vector

    def closed_sets(self, budget: Optional[int] = None) -> Dict[int, int]:
        """Intersections of active patterns, as bitmasks, with their counts.

        Every maximal face of every frame is one of these sets.

        Raises:
            EulerBudgetExceededError: If generating the sets visits more than
                ``budget`` candidates.
        """
        with self._lock:
            if self._closed is not None:
                return self._closed
            if budget is None:
                budget = get_settings().euler_budget
            masks = [bitset(p) for p in self.patterns]
            closed: set = set()
            visits = 0
            for mask in masks:
                visits += len(closed) + 1
                if visits > budget:
                    log_budget_exceeded("closed set generation", budget, visits)
                    raise EulerBudgetExceededError(budget=budget, projected=visits)
                closed |= {c & mask for c in closed if c & mask}
                closed.add(mask)
            weighted = [(bitset(p), m) for p, m in self.patterns.items()]
            self._closed = {
                c: sum(m for p, m in weighted if p & c == c) for c in sorted(closed)
            }
            return self._closed

    def maximal_face_masks(self, f: int, budget: Optional[int] = None) -> List[int]:
        """Maximal faces of the uncapped frame at ``f``, as bitmasks."""
        if f < 1:
            raise ValueError(f"Frequency level must be at least 1, got {f}")
        candidates = [c for c, support in self.closed_sets(budget).items() if support >= f]
        return maximal_masks(candidates)

    def maximal_faces(self, f: int, budget: Optional[int] = None) -> List[Simplex]:
        """Maximal faces of the uncapped frame at ``f``, sorted."""
        return sorted(tuple(bits_of(m)) for m in self.maximal_face_masks(f, budget))

    def to_dict(self) -> Dict[str, Any]:
        ordered = sorted(self.counts.items(), key=lambda kv: (len(kv[0]), kv[0]))
        return {
            "n_obs": self.n_obs,
            "max_dim_stored": self.max_dim_stored,
            "var_labels": list(self.var_labels),
            "simplices": [
                {"vertices": list(self.labels_of(s)), "count": c} for s, c in ordered
            ],
            "patterns": [
                {"vertices": list(self.labels_of(p)), "count": m}
                for p, m in sorted(self.patterns.items(), key=lambda kv: (len(kv[0]), kv[0]))
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "FilteredComplex":
        labels = list(data["var_labels"])
        counts = {
            resolve_variables(labels, entry["vertices"]): int(entry["count"])
            for entry in data["simplices"]
        }
        patterns = {
            resolve_variables(labels, entry["vertices"]): int(entry["count"])
            for entry in data.get("patterns", [])
        }
        return cls(counts, labels, data["max_dim_stored"], data["n_obs"], patterns)


def maximal_masks(masks: Iterable[int]) -> List[int]:
    """Drop every mask contained in another; result sorted by size then value."""
    ordered = sorted(set(masks), key=lambda m: (-bin(m).count("1"), m))
    kept: List[int] = []
    for m in ordered:
        if not any(m & k == m for k in kept):
            kept.append(m)
    return kept


def concurrence_count(bm: BinaryMatrix, subset: Sequence[VariableRef]) -> int:
    """Number of observations in which every variable of ``subset`` is active."""
    idx = list(resolve_variables(bm.var_labels, subset))
    if not idx:
        return bm.N
    return int(np.all(bm.bits[:, idx] == 1, axis=1).sum())


def projected_work(patterns: Mapping[Simplex, int], max_size: int) -> int:
    """Subset visits needed to enumerate faces of every distinct pattern."""
    return sum(
        sum(comb(len(p), k) for k in range(1, min(len(p), max_size) + 1))
        for p in patterns
    )


def build_filtered_complex(
    bm: BinaryMatrix,
    max_dim: int,
    budget: Optional[int] = None,
) -> FilteredComplex:
    """Build the filtered complex of ``bm`` storing dimensions up to ``max_dim + 1``.

    Duplicate rows are grouped first, so the cost depends on the number of
    distinct active sets.

    Args:
        bm: Binary observations.
        max_dim: Highest homology dimension of interest.
        budget: Maximum subset visits; ``None`` uses ``CT_WORK_BUDGET``.

    Returns:
        The filtered complex.

    Raises:
        ValueError: If ``max_dim`` is negative.
        WorkBudgetExceededError: If the projected enumeration exceeds the budget.
    """
    if max_dim < 0:
        raise ValueError(f"max_dim must be nonnegative, got {max_dim}")
    if budget is None:
        budget = get_settings().work_budget

    patterns = bm.patterns()
    max_size = max_dim + 2
    projected = projected_work(patterns, max_size)
    if projected > budget:
        log_budget_exceeded("complex construction", budget, projected)
        raise WorkBudgetExceededError(budget=budget, projected=projected)

    counts: Counter = Counter()
    for pattern, multiplicity in patterns.items():
        for face in faces_up_to(pattern, max_size):
            counts[face] += multiplicity

    fc = FilteredComplex(counts, bm.var_labels, max_dim + 1, bm.N, patterns)
    log_complex_built(len(fc), fc.max_dim_stored, fc.max_level, len(patterns))
    return fc


def frame(fc: FilteredComplex, f: int) -> FrozenSet[Simplex]:
    """Simplices with count at least ``f``; empty above the largest count."""
    return fc.frame(f)


def contingency_from_counts(fc: FilteredComplex, cell_pattern: Iterable[VariableRef]) -> int:
    """Observations whose active set is exactly ``cell_pattern``, by Moebius inversion.

    Raises:
        UncappedComplexRequiredError: If the complex does not store every subset.
    """
    if fc.max_dim_stored + 1 < fc.n_vars:
        raise UncappedComplexRequiredError()
    a = resolve_variables(fc.var_labels, cell_pattern)
    rest = [v for v in range(fc.n_vars) if v not in a]
    total = 0
    for k in range(len(rest) + 1):
        sign = -1 if k % 2 else 1
        for extra in combinations(rest, k):
            b = tuple(sorted(a + extra))
            total += sign * (fc.counts.get(b, 0) if b else fc.n_obs)
    return total


def contingency_table(fc: FilteredComplex) -> Dict[Simplex, int]:
    """Every nonzero cell of the full table, keyed by exact active set."""
    if fc.max_dim_stored + 1 < fc.n_vars:
        raise UncappedComplexRequiredError()
    cells = {(): contingency_from_counts(fc, ())}
    cells.update({s: contingency_from_counts(fc, s) for s in fc.counts})
    return {cell: n for cell, n in cells.items() if n}


def loglinear_interaction(
    bm: BinaryMatrix,
    subset: Sequence[VariableRef],
    adjust: float = 0.5,
    within: Optional[Sequence[VariableRef]] = None,
) -> float:
    """Highest-order saturated log-linear term of ``subset``.

    The table is taken over ``within`` (default: ``subset`` itself), every
    cell is increased by ``adjust`` and the term for ``subset`` is
    ``2**-|T| * sum_cells prod_{v in S} (+1 if v active else -1) * ln(cell)``.
    Negative values indicate relatively weak or negative association.

    Raises:
        ValueError: If ``subset`` has fewer than 2 variables, the table would
            exceed 16 variables, or ``subset`` is not inside ``within``.
    """
    s = resolve_variables(bm.var_labels, subset)
    t = s if within is None else resolve_variables(bm.var_labels, within)
    if len(s) < 2:
        raise ValueError("An interaction term needs at least 2 variables")
    if len(t) > 16:
        raise ValueError("Contingency tables are limited to 16 variables")
    if not set(s) <= set(t):
        raise ValueError("Interaction variables must lie inside the table variables")
    if adjust < 0:
        raise ValueError("Cell adjustment must be nonnegative")

    width = len(t)
    weights = 1 << np.arange(width)
    codes = bm.bits[:, list(t)].astype(np.int64) @ weights
    cells = np.bincount(codes, minlength=1 << width).astype(float) + adjust
    if np.any(cells <= 0):
        raise ValueError("Empty cells need a positive adjustment")

    cell_ids = np.arange(1 << width)
    sign = np.ones(1 << width)
    for pos, var in enumerate(t):
        if var in s:
            sign *= np.where((cell_ids >> pos) & 1, 1.0, -1.0)
    return float(np.dot(sign, np.log(cells)) / (1 << width))


def loglinear_term_count(n_vars: int, order: int) -> int:
    """Number of distinct interaction terms of one order in an ``n_vars``-way table."""
    return comb(n_vars, order)
