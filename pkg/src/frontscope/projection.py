"""2-D layout production for decision and objective point clouds.

Both embedding backends share one entry point so callers never branch on
the method.  The objective-space run stacks solutions and references into a
single input, which keeps the two clouds aligned in the output plane.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from frontscope.metrics import NormalizationSpec, normalize
from frontscope.model import ProjectionMethod
from frontscope.tsne import TsneParams, tsne_embed
from frontscope.umap import UmapParams, umap_embed

MIN_POINTS = 4


class ProjectionError(ValueError):
    """Base class for projection failures."""


class TooFewPoints(ProjectionError):
    """Raised when fewer than four points are given."""

    def __init__(self, got: int):
        super().__init__(f"projection needs at least {MIN_POINTS} points, got {got}")
        self.got = got


class NonFiniteInput(ProjectionError):
    """Raised when the input matrix contains NaN or infinities."""


class MethodMismatch(ProjectionError):
    """Raised when a trace is requested from the wrong kind of run."""


@dataclass(frozen=True)
class ProjectionConfig:
    """Method choice, seed, and per-method hyperparameters."""

    method: ProjectionMethod = ProjectionMethod.TSNE
    seed: int = 0
    tsne: TsneParams = TsneParams()
    umap: UmapParams = UmapParams()


@dataclass(frozen=True)
class ProjectionRun:
    """A completed embedding plus per-method audit data.

    ``kl_trace`` carries the t-SNE objective sampled every 50 iterations
    (None for UMAP runs); with the default schedule, entries from index 5
    onward lie past the early-exaggeration phase.
    """

    method: ProjectionMethod
    coordinates: np.ndarray
    kl_trace: tuple[float, ...] | None


def run_projection(vectors: np.ndarray, config: ProjectionConfig) -> ProjectionRun:
    """Embeds row vectors into 2-D and keeps the run's audit trail.

    Args:
        vectors: (K, d) matrix, K >= 4, finite.
        config: Method, seed, and hyperparameters.

    Raises:
        TooFewPoints: If K < 4.
        NonFiniteInput: If the matrix contains NaN or infinities.
    """
    vectors = np.asarray(vectors, dtype=np.float64)
    if vectors.ndim != 2:
        raise ProjectionError(f"expected a 2-D matrix, got {vectors.ndim}-D")
    if vectors.shape[0] < MIN_POINTS:
        raise TooFewPoints(vectors.shape[0])
    if not np.all(np.isfinite(vectors)):
        raise NonFiniteInput("projection input must be finite")
    if config.method is ProjectionMethod.TSNE:
        coordinates, trace = tsne_embed(vectors, config.tsne, config.seed)
        kl_trace: tuple[float, ...] | None = tuple(trace)
    else:
        coordinates = umap_embed(vectors, config.umap, config.seed)
        kl_trace = None
    if not np.all(np.isfinite(coordinates)):
        raise ProjectionError("embedding diverged to non-finite coordinates")
    return ProjectionRun(method=config.method, coordinates=coordinates, kl_trace=kl_trace)


def project(vectors: np.ndarray, config: ProjectionConfig) -> np.ndarray:
    """Embeds row vectors into 2-D, discarding the audit trail."""
    return run_projection(vectors, config).coordinates


def tsne_kl_trace(run: ProjectionRun) -> list[float]:
    """The sampled KL divergence of a completed t-SNE run.

    Raises:
        MethodMismatch: If the run used another method.
    """
    if run.method is not ProjectionMethod.TSNE or run.kl_trace is None:
        raise MethodMismatch("KL trace is only recorded for t-SNE runs")
    return list(run.kl_trace)


def project_objective_space(
    solution_set, references, spec: NormalizationSpec, config: ProjectionConfig
) -> tuple[np.ndarray, np.ndarray]:
    """Jointly embeds solution and reference objective vectors.

    The reference rows are appended below the solutions before a single
    shared run, so both clouds live in one coordinate system and can be
    overlaid.  There is no separate code path for the two blocks.

    Returns:
        (solution_coords, reference_coords) of shapes (N, 2) and (R, 2).
    """
    objectives = (
        solution_set.objective if hasattr(solution_set, "objective") else solution_set
    )
    objectives = np.asarray(objectives, dtype=np.float64)
    points = references.points if hasattr(references, "points") else references
    points = np.asarray(points, dtype=np.float64)
    stacked = np.vstack([objectives, points])
    coordinates = project(normalize(stacked, spec), config)
    n = objectives.shape[0]
    return coordinates[:n], coordinates[n:]
