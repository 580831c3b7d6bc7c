"""Pareto dominance tests between objective vectors.

A vector dominates another when it is at least as good in every objective
and strictly better in at least one, where "better" follows the
per-objective sense flags (minimize or maximize).  Two identical vectors
never dominate each other.
"""

from __future__ import annotations

import numpy as np

from frontscope.model import SolutionSet

_CHUNK = 256


class LengthMismatch(ValueError):
    """Raised when two objective vectors have different lengths."""

    def __init__(self, left: int, right: int):
        super().__init__(f"objective vectors of length {left} and {right}")
        self.left = left
        self.right = right


def _orientation(sense, m: int) -> np.ndarray:
    """Returns per-column signs that turn every objective into minimize."""
    if not sense:
        return np.ones(m)
    if len(sense) != m:
        raise LengthMismatch(len(sense), m)
    return np.where(np.asarray(sense) == "min", 1.0, -1.0)


def dominates(a, b, sense=()) -> bool:
    """True iff objective vector ``a`` Pareto-dominates ``b``."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.ndim != 1 or b.ndim != 1 or a.shape != b.shape:
        raise LengthMismatch(a.size, b.size)
    signs = _orientation(sense, a.shape[0])
    fa = a * signs
    fb = b * signs
    return bool(np.all(fa <= fb) and np.any(fa < fb))


def dominated_flags_matrix(objectives: np.ndarray, sense=()) -> np.ndarray:
    """Marks every row of ``objectives`` dominated by some other row.

    Args:
        objectives: (N, m) objective matrix.
        sense: Optional per-objective "min"/"max" flags, all-min if empty.

    Returns:
        Boolean array of length N, True where the row is dominated.
    """
    objectives = np.asarray(objectives, dtype=np.float64)
    n = objectives.shape[0]
    if n == 0:
        return np.zeros(0, dtype=bool)
    oriented = objectives * _orientation(sense, objectives.shape[1])
    flags = np.zeros(n, dtype=bool)
    for start in range(0, n, _CHUNK):
        block = oriented[start : start + _CHUNK]
        # le[j, i]: candidate j is no worse than block row i everywhere
        le = (oriented[:, None, :] <= block[None, :, :]).all(axis=2)
        lt = (oriented[:, None, :] < block[None, :, :]).any(axis=2)
        flags[start : start + _CHUNK] = (le & lt).any(axis=0)
    return flags


def dominated_flags(solution_set: SolutionSet) -> np.ndarray:
    """Per-solution dominated flags using the set's objective sense."""
    return dominated_flags_matrix(
        solution_set.objective, solution_set.meta.objective_sense
    )
