"""
GF(2) linear algebra helpers.

Vectors are Python ints used as bitsets: bit ``i`` set means coordinate ``i``
is 1. Addition is XOR. Sparse boundary columns elsewhere in the package are
sets of simplex indices and use symmetric difference the same way.
"""

from __future__ import annotations

from itertools import combinations
from typing import Dict, Iterable, List, Sequence, Set, Tuple

Simplex = Tuple[int, ...]


def facets(vertices: Sequence[int]) -> List[Simplex]:
    """Codimension-one faces of a simplex, dropping one vertex at a time."""
    verts = tuple(vertices)
    return [verts[:i] + verts[i + 1:] for i in range(len(verts))]


def faces_up_to(vertices: Sequence[int], max_size: int) -> Iterable[Simplex]:
    """Nonempty faces of ``vertices`` with at most ``max_size`` vertices."""
    verts = tuple(vertices)
    for k in range(1, min(max_size, len(verts)) + 1):
        yield from combinations(verts, k)


def bitset(indices: Iterable[int]) -> int:
    value = 0
    for i in indices:
        value ^= 1 << i
    return value


def bits_of(value: int) -> List[int]:
    """Indices of the set bits, ascending."""
    out = []
    while value:
        low = value & -value
        out.append(low.bit_length() - 1)
        value ^= low
    return out


class GF2Basis:
    """Incremental echelon basis keyed by the highest set bit.

    ``add`` reduces a vector against the basis and keeps the remainder;
    ``reduce`` returns what is left after elimination.
    """

    def __init__(self) -> None:
        self._pivots: Dict[int, int] = {}

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def reduce(self, vector: int) -> int:
        while vector:
            top = vector.bit_length() - 1
            pivot = self._pivots.get(top)
            if pivot is None:
                return vector
            vector ^= pivot
        return 0

    def add(self, vector: int) -> bool:
        """Insert a vector; returns False when it was already in the span."""
        remainder = self.reduce(vector)
        if not remainder:
            return False
        self._pivots[remainder.bit_length() - 1] = remainder
        return True


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) of a collection of bitset rows."""
    basis = GF2Basis()
    for row in rows:
        basis.add(row)
    return basis.rank


def add_columns(target: Set[int], source: Set[int]) -> None:
    """In-place symmetric difference of two sparse columns."""
    target ^= source


__all__ = [
    "Simplex",
    "facets",
    "faces_up_to",
    "bitset",
    "bits_of",
    "GF2Basis",
    "gf2_rank",
    "add_columns",
]
