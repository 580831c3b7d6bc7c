"""Normalization, nearest-neighbor distances, and histogram summaries.

Distances here are always Euclidean and are computed in a shared normalized
space so that objectives on wildly different scales contribute evenly.  The
same ``NormalizationSpec`` must be used for every quantity that ends up
compared against another.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from frontscope.model import DimensionMismatch

_CHUNK = 256


class MetricsError(ValueError):
    """Base class for metric computation failures."""


class EmptyReferenceSet(MetricsError):
    """Raised when reference distances are requested without references."""


class TooFewSolutions(MetricsError):
    """Raised when nearest-solution distances need at least two points."""


class EmptyInput(MetricsError):
    """Raised when a histogram is requested over no values."""


class NormalizationMode(Enum):
    """How vectors are rescaled before distance computations."""

    NONE = "none"
    MIN_MAX_JOINT = "min_max_joint"


@dataclass(frozen=True)
class NormalizationSpec:
    """Frozen per-dimension bounds fitted once and applied everywhere.

    For ``MIN_MAX_JOINT`` the bounds are the per-column minima and maxima
    over all matrices passed to ``fit``, typically solutions and references
    together, so both clouds land in the same unit box.
    """

    mode: NormalizationMode
    lo: np.ndarray | None = None
    hi: np.ndarray | None = None

    @classmethod
    def fit(
        cls, matrices: Sequence[np.ndarray], mode: NormalizationMode
    ) -> "NormalizationSpec":
        """Computes bounds over the union of the given row matrices."""
        if mode is NormalizationMode.NONE:
            return cls(mode=mode)
        arrays = [np.asarray(m, dtype=np.float64) for m in matrices]
        if not arrays:
            raise EmptyInput("at least one matrix is required to fit bounds")
        width = arrays[0].shape[1]
        for arr in arrays:
            if arr.shape[1] != width:
                raise DimensionMismatch("normalization.fit", width, arr.shape[1])
        stacked = np.vstack([a for a in arrays if a.shape[0] > 0])
        if stacked.shape[0] == 0:
            lo = np.zeros(width)
            hi = np.zeros(width)
        else:
            lo = stacked.min(axis=0)
            hi = stacked.max(axis=0)
        lo.setflags(write=False)
        hi.setflags(write=False)
        return cls(mode=mode, lo=lo, hi=hi)


def normalize(vectors: np.ndarray, spec: NormalizationSpec) -> np.ndarray:
    """Applies a fitted spec to a row matrix.

    Degenerate dimensions (equal lower and upper bound) map to 0.5 so they
    carry no distance information instead of producing divisions by zero.
    """
    vectors = np.asarray(vectors, dtype=np.float64)
    if spec.mode is NormalizationMode.NONE:
        return vectors.copy()
    if vectors.shape[1] != spec.lo.shape[0]:
        raise DimensionMismatch("normalize", spec.lo.shape[0], vectors.shape[1])
    span = spec.hi - spec.lo
    degenerate = span == 0.0
    safe_span = np.where(degenerate, 1.0, span)
    out = (vectors - spec.lo) / safe_span
    out[:, degenerate] = 0.5
    return out


def _objective_matrix(solutions) -> np.ndarray:
    if hasattr(solutions, "objective"):
        return solutions.objective
    return np.asarray(solutions, dtype=np.float64)


def nearest_reference_distances(solutions, references, spec: NormalizationSpec) -> np.ndarray:
    """Distance from every solution to its closest reference point.

    Args:
        solutions: SolutionSet or (N, m) objective matrix.
        references: ReferenceSet or (R, m) matrix, R >= 1.
        spec: Normalization applied to both sides before measuring.

    Returns:
        (N,) array of Euclidean distances in normalized space.
    """
    points = normalize(_objective_matrix(solutions), spec)
    refs = references.points if hasattr(references, "points") else references
    refs = np.asarray(refs, dtype=np.float64)
    if refs.shape[0] == 0:
        raise EmptyReferenceSet("reference distances need at least one reference point")
    refs = normalize(refs, spec)
    out = np.empty(points.shape[0])
    for start in range(0, points.shape[0], _CHUNK):
        block = points[start : start + _CHUNK]
        diff = block[:, None, :] - refs[None, :, :]
        dist = np.sqrt((diff * diff).sum(axis=2))
        out[start : start + _CHUNK] = dist.min(axis=1)
    return out


def nearest_solution_distances(
    solutions, spec: NormalizationSpec
) -> tuple[np.ndarray, np.ndarray]:
    """Distance from every solution to its closest other solution.

    Ties are resolved toward the smallest index.  Duplicate rows report a
    distance of exactly zero.

    Returns:
        A (distances, indices) pair of (N,) arrays.
    """
    points = normalize(_objective_matrix(solutions), spec)
    n = points.shape[0]
    if n < 2:
        raise TooFewSolutions("nearest-solution distances need at least two solutions")
    dist_out = np.empty(n)
    idx_out = np.empty(n, dtype=np.int64)
    for start in range(0, n, _CHUNK):
        block = points[start : start + _CHUNK]
        diff = block[:, None, :] - points[None, :, :]
        dist = np.sqrt((diff * diff).sum(axis=2))
        for local in range(block.shape[0]):
            dist[local, start + local] = np.inf
        idx = dist.argmin(axis=1)
        dist_out[start : start + _CHUNK] = dist[np.arange(block.shape[0]), idx]
        idx_out[start : start + _CHUNK] = idx
    return dist_out, idx_out


def mutual_nearest_pairs(indices: np.ndarray) -> list[tuple[int, int]]:
    """Pairs (i, j), i < j, where each is the other's nearest solution."""
    indices = np.asarray(indices, dtype=np.int64)
    pairs = []
    for i, j in enumerate(indices):
        j = int(j)
        if j > i and int(indices[j]) == i:
            pairs.append((i, j))
    return pairs


def histogram(values, bin_count: int = 20) -> tuple[np.ndarray, np.ndarray]:
    """Counts values into uniform bins spanning [min, max].

    Every bin is half-open on the right except the last, which also includes
    the maximum.  A degenerate range (all values equal) puts everything in
    bin 0.

    Returns:
        A (edges, counts) pair with ``bin_count + 1`` edges.
    """
    values = np.asarray(values, dtype=np.float64).ravel()
    if values.size == 0:
        raise EmptyInput("histogram needs at least one value")
    if bin_count < 1:
        raise ValueError("bin_count must be at least 1")
    lo = values.min()
    hi = values.max()
    edges = np.linspace(lo, hi, bin_count + 1)
    if lo == hi:
        counts = np.zeros(bin_count, dtype=np.int64)
        counts[0] = values.size
        return edges, counts
    pos = np.searchsorted(edges, values, side="right") - 1
    np.clip(pos, 0, bin_count - 1, out=pos)
    counts = np.bincount(pos, minlength=bin_count).astype(np.int64)
    return edges, counts
