"""
Pydantic models for the concurrence toolkit.

This module contains the data models shared across the pipeline: continuous
series, dichotomized binary matrices, configuration records, persistence
pairs and diagrams, moment vectors, short-cycle records and run manifests.
"""

from __future__ import annotations

from collections import Counter
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class Domain(str, Enum):
    """Dichotomization domain."""
    TIME = "time"
    FOURIER = "fourier"


def _check_labels(labels: Sequence[str], width: int) -> None:
    if len(labels) != width:
        raise ValueError(f"Expected {width} variable labels, got {len(labels)}")
    if len(set(labels)) != len(labels):
        duplicates = sorted(label for label, n in Counter(labels).items() if n > 1)
        raise ValueError(f"Variable labels must be unique; duplicated: {duplicates}")


class SeriesMatrix(BaseModel):
    """T x V matrix of real-valued series, one column per variable."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    values: np.ndarray
    var_labels: List[str]

    @field_validator("values", mode="before")
    @classmethod
    def coerce_values(cls, v):
        arr = np.array(v, dtype=float)
        if arr.ndim != 2:
            raise ValueError("Series values must form a 2-dimensional matrix")
        if not np.all(np.isfinite(arr)):
            raise ValueError("Series values must not contain missing or infinite entries")
        arr.flags.writeable = False
        return arr

    @model_validator(mode="after")
    def validate_shape(self):
        if self.values.shape[0] < 2:
            raise ValueError("A series matrix needs at least 2 time points")
        if self.values.shape[1] < 1:
            raise ValueError("A series matrix needs at least 1 variable")
        _check_labels(self.var_labels, self.values.shape[1])
        return self

    @property
    def T(self) -> int:
        return int(self.values.shape[0])

    @property
    def V(self) -> int:
        return int(self.values.shape[1])

    def column(self, label: str) -> np.ndarray:
        """Return the series of one variable."""
        return self.values[:, self.var_labels.index(label)]

    def select(self, labels: Sequence[str]) -> "SeriesMatrix":
        """Return the sub-matrix of the given variables, in the given order."""
        idx = [self.var_labels.index(label) for label in labels]
        return SeriesMatrix(values=self.values[:, idx], var_labels=list(labels))

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, SeriesMatrix):
            return NotImplemented
        return self.var_labels == other.var_labels and np.array_equal(self.values, other.values)


class BinaryMatrix(BaseModel):
    """N x V' matrix of 0/1 observations with variable labels."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    bits: np.ndarray
    var_labels: List[str]

    @field_validator("bits", mode="before")
    @classmethod
    def coerce_bits(cls, v):
        arr = np.array(v)
        if arr.ndim != 2:
            raise ValueError("Binary data must form a 2-dimensional matrix")
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise ValueError("Binary matrix entries must be 0 or 1")
        arr = arr.astype(np.uint8)
        arr.flags.writeable = False
        return arr

    @model_validator(mode="after")
    def validate_labels(self):
        _check_labels(self.var_labels, self.bits.shape[1])
        return self

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], var_labels: Sequence[str]) -> "BinaryMatrix":
        """Build a matrix from a list of 0/1 rows."""
        bits = np.array(rows, dtype=np.uint8).reshape(len(rows), len(var_labels))
        return cls(bits=bits, var_labels=list(var_labels))

    @property
    def N(self) -> int:
        return int(self.bits.shape[0])

    @property
    def V(self) -> int:
        return int(self.bits.shape[1])

    def column_sums(self) -> np.ndarray:
        return self.bits.sum(axis=0).astype(int)

    def active_sets(self) -> List[Tuple[int, ...]]:
        """Active variable indices of every observation, in row order."""
        return [tuple(int(j) for j in np.flatnonzero(row)) for row in self.bits]

    def patterns(self) -> Dict[Tuple[int, ...], int]:
        """Distinct nonempty active sets with their multiplicities."""
        counts = Counter(s for s in self.active_sets() if s)
        return dict(sorted(counts.items()))

    def indices_of(self, labels: Sequence[str]) -> Tuple[int, ...]:
        """Map variable labels to sorted column indices."""
        missing = [label for label in labels if label not in self.var_labels]
        if missing:
            raise ValueError(f"Unknown variable labels: {missing}")
        return tuple(sorted(self.var_labels.index(label) for label in labels))

    def select(self, labels: Sequence[str]) -> "BinaryMatrix":
        idx = [self.var_labels.index(label) for label in labels]
        return BinaryMatrix(bits=self.bits[:, idx], var_labels=list(labels))

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, BinaryMatrix):
            return NotImplemented
        return self.var_labels == other.var_labels and np.array_equal(self.bits, other.bits)


class DichotomizeConfig(BaseModel):
    """Settings for variability screening and dichotomization."""
    model_config = ConfigDict(frozen=True)

    domain: Domain = Field(default=Domain.TIME)
    drop_fraction: float = Field(default=0.2, ge=0.0, lt=1.0)
    active_fraction: float = Field(default=0.2, gt=0.0, lt=1.0)
    power_quantile: float = Field(default=0.9, gt=0.0, lt=1.0)


class NullConfig(BaseModel):
    """Settings for the independence null generator."""
    model_config = ConfigDict(frozen=True)

    n_obs: int = Field(ge=1)
    n_vars: int = Field(ge=1)
    activity_rate: float = Field(default=0.2, gt=0.0, lt=1.0)
    seed: int = Field(default=0, ge=0, lt=2**64)


class PersistencePair(BaseModel):
    """One persistent homology class of the descending filtration."""
    model_config = ConfigDict(frozen=True)

    dimension: int = Field(ge=0)
    birth: int = Field(ge=1)
    death: int = Field(ge=0)

    @model_validator(mode="after")
    def validate_order(self):
        if self.birth <= self.death:
            raise ValueError(f"Birth level {self.birth} must exceed death level {self.death}")
        return self

    @property
    def lifespan(self) -> int:
        return self.birth - self.death

    def alive_at(self, level: int) -> bool:
        """Whether the class exists in the frame at ``level``."""
        return self.birth >= level > self.death


class PersistenceDiagram(BaseModel):
    """Multiset of persistence pairs plus provenance."""
    model_config = ConfigDict(frozen=True)

    pairs: Tuple[PersistencePair, ...] = ()
    max_dim: int = Field(ge=0)
    provenance: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def validate_dimensions(self):
        too_high = [p for p in self.pairs if p.dimension > self.max_dim]
        if too_high:
            raise ValueError(f"Diagram capped at dimension {self.max_dim} holds higher pairs")
        return self

    def pairs_of_dim(self, d: int) -> List[PersistencePair]:
        """Pairs of one dimension, sorted by birth then death, both descending."""
        return sorted(
            (p for p in self.pairs if p.dimension == d),
            key=lambda p: (-p.birth, -p.death),
        )

    def multiset(self, d: int) -> Counter:
        """(birth, death) multiplicities in dimension ``d``."""
        return Counter((p.birth, p.death) for p in self.pairs if p.dimension == d)

    def alive_at(self, level: int, d: int) -> int:
        """Number of dimension-``d`` classes alive in the frame at ``level``."""
        return sum(1 for p in self.pairs if p.dimension == d and p.alive_at(level))

    def total_persistence(self, d: int, p: float = 1.0) -> float:
        """(sum of lifespan^p)^(1/p) over dimension ``d``."""
        total = sum(pair.lifespan ** p for pair in self.pairs if pair.dimension == d)
        return total ** (1.0 / p) if total else 0.0

    def to_dict(self) -> Dict[str, Any]:
        dims = []
        for d in range(self.max_dim + 1):
            dims.append({"d": d, "pairs": [[p.birth, p.death] for p in self.pairs_of_dim(d)]})
        return {"dims": dims, "provenance": dict(self.provenance)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "PersistenceDiagram":
        pairs = [
            PersistencePair(dimension=entry["d"], birth=b, death=dd)
            for entry in data["dims"]
            for b, dd in entry["pairs"]
        ]
        max_dim = max((entry["d"] for entry in data["dims"]), default=0)
        return cls(pairs=tuple(pairs), max_dim=max_dim, provenance=data.get("provenance", {}))


MOMENT_INDICES: Tuple[Tuple[int, int], ...] = tuple(
    (i, j) for i in range(3) for j in range(3) if (i, j) != (0, 0)
)


class MomentVector(BaseModel):
    """Count plus the eight birth/lifespan moments of one dimension."""
    model_config = ConfigDict(frozen=True)

    dimension: int = Field(ge=0)
    count: int = Field(ge=0)
    m: List[List[Optional[float]]]

    @model_validator(mode="after")
    def validate_grid(self):
        if len(self.m) != 3 or any(len(row) != 3 for row in self.m):
            raise ValueError("Moment grid must be 3 x 3")
        if self.m[0][0] is not None:
            raise ValueError("The (0, 0) slot is carried by count, not by the grid")
        for i, j in MOMENT_INDICES:
            value = self.m[i][j]
            if self.count == 0 and value is not None:
                raise ValueError("Moments of an empty dimension must be undefined")
            if self.count > 0 and (value is None or value < 0):
                raise ValueError(f"Moment m[{i}][{j}] must be a nonnegative number")
        return self

    @property
    def defined(self) -> bool:
        return self.count > 0

    def value(self, i: int, j: int) -> Optional[float]:
        if (i, j) == (0, 0):
            raise ValueError("Use count for the (0, 0) slot")
        return self.m[i][j]

    def as_rows(self) -> List[Tuple[int, str, Optional[float]]]:
        """(dimension, moment name, value) rows, count first."""
        rows: List[Tuple[int, str, Optional[float]]] = [(self.dimension, "count", float(self.count))]
        rows.extend((self.dimension, f"m{i}{j}", self.m[i][j]) for i, j in MOMENT_INDICES)
        return rows


class ShortCycleRecord(BaseModel):
    """A (d+2)-variable short cycle and the levels at which it is a hole."""
    model_config = ConfigDict(frozen=True)

    vertices: Tuple[int, ...]
    labels: Tuple[str, ...]
    dimension: int = Field(ge=0)
    levels_nonbounding: Tuple[int, ...]
    contiguous: bool = True

    @model_validator(mode="after")
    def validate_vertices(self):
        if len(self.vertices) != self.dimension + 2:
            raise ValueError(
                f"A short {self.dimension}-cycle has {self.dimension + 2} vertices, got {len(self.vertices)}"
            )
        if len(self.labels) != len(self.vertices):
            raise ValueError("One label per vertex is required")
        if any(f < 1 for f in self.levels_nonbounding):
            raise ValueError("Frequency levels start at 1")
        return self

    @property
    def cycle_lifespan(self) -> int:
        return len(self.levels_nonbounding)


class RunManifest(BaseModel):
    """Reproducibility record written next to every CLI output."""

    command: str
    config: Dict[str, Any] = Field(default_factory=dict)
    input_digest: str
    tool_version: str
    wall_time_seconds: float = Field(ge=0.0)
