"""
Scalar summaries of diagrams and frames.

Moments condense one dimension of a persistence diagram into a count plus
eight birth/lifespan averages. The Euler characteristic of a frame is taken
over all of its simplices, not just the stored ones, so it is computed from
the maximal faces of the frame rather than from the capped count store.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import numpy as np
from loguru import logger

from ..config.settings import get_settings
from ..utils.logging import log_budget_exceeded
from .complex import FilteredComplex, maximal_masks
from .exceptions import EulerBudgetExceededError
from .gf2 import bitset
from .models import MOMENT_INDICES, MomentVector, PersistenceDiagram


def moments(diagram: PersistenceDiagram, d: int) -> MomentVector:
    """Count and the eight moments ``(mean birth^i * lifespan^j)^(1/(i+j))`` of dimension ``d``.

    Pairs are averaged with multiplicity. An empty dimension yields count 0
    and undefined (None) moments.
    """
    pairs = diagram.pairs_of_dim(d)
    grid: List[List[Optional[float]]] = [[None] * 3 for _ in range(3)]
    if pairs:
        births = np.array([p.birth for p in pairs], dtype=float)
        spans = np.array([p.lifespan for p in pairs], dtype=float)
        for i, j in MOMENT_INDICES:
            mean = float(np.mean(births ** i * spans ** j))
            grid[i][j] = mean ** (1.0 / (i + j))
    return MomentVector(dimension=d, count=len(pairs), m=grid)


def all_moments(diagram: PersistenceDiagram) -> List[MomentVector]:
    return [moments(diagram, d) for d in range(diagram.max_dim + 1)]


def _chi_of_union(family: Tuple[int, ...], memo: Dict[FrozenSet[int], int], state: List[int], budget: int) -> int:
    key = frozenset(family)
    if key in memo:
        return memo[key]
    total = 0
    for i, m in enumerate(family):
        state[0] += 1
        if state[0] > budget:
            raise EulerBudgetExceededError(budget=budget, projected=state[0])
        overlaps = tuple(maximal_masks(family[j] & m for j in range(i) if family[j] & m))
        total += 1 - (_chi_of_union(overlaps, memo, state, budget) if overlaps else 0)
    memo[key] = total
    return total


def euler_by_inclusion_exclusion(fc: FilteredComplex, f: int, budget: Optional[int] = None) -> int:
    """Euler characteristic from the maximal faces of the frame at ``f``.

    Adds one full simplex at a time: chi(K + M) = chi(K) + 1 - chi(K & M),
    where K & M is again a union of simplices and is reduced to its maximal
    members before recursing.
    """
    if budget is None:
        budget = get_settings().euler_budget
    family = tuple(fc.maximal_face_masks(f, budget))
    if not family:
        return 0
    state = [0]
    return _chi_of_union(family, {}, state, budget)


def euler_by_lattice(fc: FilteredComplex, f: int, max_vars: Optional[int] = None) -> int:
    """Euler characteristic by counting every face on the subset lattice.

    Counts come from a superset-sum transform of the pattern multiplicities.

    Raises:
        ValueError: If the complex has more variables than ``max_vars``.
    """
    if f < 1:
        raise ValueError(f"Frequency level must be at least 1, got {f}")
    if max_vars is None:
        max_vars = get_settings().lattice_max_vars
    n = fc.n_vars
    if n > max_vars:
        raise ValueError(f"Subset lattice limited to {max_vars} variables, got {n}")
    if n == 0:
        return 0
    support = np.zeros(1 << n, dtype=np.int64)
    for pattern, multiplicity in fc.patterns.items():
        support[bitset(pattern)] += multiplicity
    for bit in range(n):
        step = 1 << bit
        view = support.reshape(-1, 2, step)
        view[:, 0, :] += view[:, 1, :]
    parity = np.zeros(1 << n, dtype=np.int8)
    for bit in range(n):
        step = 1 << bit
        view = parity.reshape(-1, 2, step)
        view[:, 1, :] ^= 1
    faces = support >= f
    faces[0] = False
    # odd vertex count means even dimension
    odd = int(np.count_nonzero(faces & (parity == 1)))
    even = int(np.count_nonzero(faces & (parity == 0)))
    return odd - even


def euler_characteristic(
    fc: FilteredComplex,
    f: int,
    budget: Optional[int] = None,
    method: str = "auto",
) -> int:
    """Exact Euler characteristic of the uncapped frame at ``f``.

    Args:
        fc: Filtered complex.
        f: Frequency level, at least 1.
        budget: Node-visit budget of inclusion-exclusion; ``None`` uses
            ``CT_EULER_BUDGET``.
        method: ``"auto"``, ``"inclusion_exclusion"`` or ``"lattice"``.

    Raises:
        EulerBudgetExceededError: If inclusion-exclusion runs out of budget
            and the complex is too wide for the subset lattice.
    """
    if f < 1:
        raise ValueError(f"Frequency level must be at least 1, got {f}")
    if method == "lattice":
        return euler_by_lattice(fc, f)
    if method not in ("auto", "inclusion_exclusion"):
        raise ValueError(f"Unknown Euler method '{method}'")
    try:
        return euler_by_inclusion_exclusion(fc, f, budget)
    except EulerBudgetExceededError as e:
        if method == "auto" and fc.n_vars <= get_settings().lattice_max_vars:
            logger.warning(f"Inclusion-exclusion over budget at level {f}; counting faces directly")
            return euler_by_lattice(fc, f)
        log_budget_exceeded("Euler characteristic", e.budget, e.projected)
        raise


def euler_curve(
    fc: FilteredComplex,
    levels: Optional[Iterable[int]] = None,
    budget: Optional[int] = None,
    threads: Optional[int] = None,
) -> Dict[int, int]:
    """Euler characteristic at each requested level (default: every level present).

    Levels are spread over ``threads`` workers (default ``CT_THREADS``); the
    result is ordered by level, highest first, whatever the thread count.
    """
    chosen = sorted(set(levels), reverse=True) if levels is not None else fc.levels()
    if threads is None:
        threads = get_settings().threads
    if threads <= 1 or len(chosen) <= 1:
        return {f: euler_characteristic(fc, f, budget) for f in chosen}
    with ThreadPoolExecutor(max_workers=threads) as pool:
        values = list(pool.map(lambda f: euler_characteristic(fc, f, budget), chosen))
    return dict(zip(chosen, values))
