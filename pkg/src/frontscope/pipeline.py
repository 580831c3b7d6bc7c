"""End-to-end preprocessing from raw matrices to an annotated artifact."""

from __future__ import annotations

import dataclasses
import time
from dataclasses import dataclass, field, replace

import numpy as np

from . import clustering, density, dominance, ingest, metrics, model, projection

STAGE_NAMES = (
    "ingest",
    "dominance",
    "metrics",
    "projection_decision",
    "projection_objective",
    "density",
    "lof",
    "clustering",
    "serialize",
)


class PipelineError(Exception):
    """Base class for orchestration failures."""


class ConfigError(PipelineError):
    """An override mapping names an unknown key or carries a bad value."""


class PipelineStageError(PipelineError):
    """A stage raised; the original exception rides along as the cause."""

    def __init__(self, stage: str, cause: BaseException):
        super().__init__(f"stage {stage!r} failed: {cause}")
        self.stage = stage


@dataclass(frozen=True)
class KdeSettings:
    """Grid shape, kernel width, and margin for the reference density map."""

    grid_w: int = density.DEFAULT_GRID_W
    grid_h: int = density.DEFAULT_GRID_H
    bandwidth: float | None = None
    margin: float = density.DEFAULT_MARGIN


@dataclass(frozen=True)
class LofSettings:
    """Neighborhood size and score cutoff for reference outlier flagging."""

    k: int = density.DEFAULT_LOF_K
    threshold: float = density.DEFAULT_LOF_THRESHOLD


@dataclass(frozen=True)
class PipelineConfig:
    """Every knob of the preprocessing run under a single master seed.

    The master ``seed`` drives all stochastic stages; the two projection
    runs derive their own seeds from it by fixed offsets, so one integer
    reproduces the whole artifact.
    """

    projection: projection.ProjectionConfig = field(default_factory=projection.ProjectionConfig)
    hdbscan: clustering.HdbscanConfig = field(default_factory=clustering.HdbscanConfig)
    kde: KdeSettings = field(default_factory=KdeSettings)
    lof: LofSettings = field(default_factory=LofSettings)
    normalization: metrics.NormalizationMode = metrics.NormalizationMode.MIN_MAX_JOINT
    seed: int = 0

    @classmethod
    def from_dict(cls, raw: dict) -> "PipelineConfig":
        """Builds a config by merging a JSON-shaped mapping over defaults.

        Recognized sections: ``projection`` (``method`` plus nested
        ``tsne``/``umap`` parameter objects), ``hdbscan``, ``kde``, ``lof``,
        ``normalization``, and ``seed``.  Unknown keys fail loudly rather
        than being silently dropped.

        Args:
            raw: Parsed JSON object with overrides.

        Raises:
            ConfigError: On unknown keys or unusable values.
        """
        if not isinstance(raw, dict):
            raise ConfigError("config root must be a JSON object")
        known = {"projection", "hdbscan", "kde", "lof", "normalization", "seed"}
        for key in raw:
            if key not in known:
                raise ConfigError(f"unknown config key {key!r}")
        config = cls()
        proj = config.projection
        proj_raw = raw.get("projection", {})
        if not isinstance(proj_raw, dict):
            raise ConfigError("projection section must be a JSON object")
        proj_raw = dict(proj_raw)
        if "seed" in proj_raw:
            raise ConfigError("set the top-level seed instead of projection.seed")
        if "method" in proj_raw:
            try:
                method = model.ProjectionMethod(proj_raw.pop("method"))
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc
            proj = replace(proj, method=method)
        if "tsne" in proj_raw:
            proj = replace(proj, tsne=_merged(proj.tsne, proj_raw.pop("tsne"), "projection.tsne"))
        if "umap" in proj_raw:
            proj = replace(proj, umap=_merged(proj.umap, proj_raw.pop("umap"), "projection.umap"))
        if proj_raw:
            raise ConfigError(f"unknown projection key {sorted(proj_raw)[0]!r}")
        config = replace(config, projection=proj)
        for section in ("hdbscan", "kde", "lof"):
            if section in raw:
                merged = _merged(getattr(config, section), raw[section], section)
                config = replace(config, **{section: merged})
        if "normalization" in raw:
            try:
                mode = metrics.NormalizationMode(raw["normalization"])
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc
            config = replace(config, normalization=mode)
        if "seed" in raw:
            seed = raw["seed"]
            if isinstance(seed, bool) or not isinstance(seed, int):
                raise ConfigError("seed must be an integer")
            config = replace(config, seed=seed)
        return config


def _merged(instance, overrides, section: str):
    """Applies a flat override mapping onto a parameter dataclass."""
    if not isinstance(overrides, dict):
        raise ConfigError(f"{section} section must be a JSON object")
    names = {f.name for f in dataclasses.fields(type(instance))}
    for key in overrides:
        if key not in names:
            raise ConfigError(f"unknown config key {section}.{key}")
    try:
        return dataclasses.replace(instance, **overrides)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad value in {section}: {exc}") from exc


@dataclass(frozen=True)
class TimingReport:
    """Wall-clock seconds per stage; skipped stages stay at zero."""

    stages: dict[str, float]
    total: float

    @property
    def projection_seconds(self) -> float:
        return self.stages["projection_decision"] + self.stages["projection_objective"]

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "projection": self.projection_seconds,
            "stages": {name: self.stages[name] for name in STAGE_NAMES},
        }


def run_pipeline(
    bundle: ingest.RawInputBundle, config: PipelineConfig | None = None
) -> tuple[model.AnalysisArtifact, TimingReport]:
    """Reads the bundle's files and runs every analysis stage on them.

    File and format problems surface as the ingest module's own errors;
    any later failure arrives wrapped in a PipelineStageError naming the
    stage, and no partial artifact is ever produced.

    Args:
        bundle: Input file locations and dataset labels.
        config: Stage settings; defaults throughout when omitted.

    Returns:
        The finished artifact and the per-stage timing breakdown.
    """
    config = config if config is not None else PipelineConfig()
    timings = {name: 0.0 for name in STAGE_NAMES}
    started = time.perf_counter()
    tick = time.perf_counter()
    solution_set, reference_set = ingest.build_sets(bundle)
    timings["ingest"] = time.perf_counter() - tick
    artifact = _annotate(solution_set, reference_set, config, timings)
    return artifact, TimingReport(stages=timings, total=time.perf_counter() - started)


def annotate_sets(
    solution_set: model.SolutionSet,
    reference_set: model.ReferenceSet,
    config: PipelineConfig | None = None,
) -> tuple[model.AnalysisArtifact, TimingReport]:
    """Runs the analysis stages on sets already in memory (no file I/O)."""
    config = config if config is not None else PipelineConfig()
    timings = {name: 0.0 for name in STAGE_NAMES}
    started = time.perf_counter()
    artifact = _annotate(solution_set, reference_set, config, timings)
    return artifact, TimingReport(stages=timings, total=time.perf_counter() - started)


def _annotate(
    solution_set: model.SolutionSet,
    reference_set: model.ReferenceSet,
    config: PipelineConfig,
    timings: dict[str, float],
) -> model.AnalysisArtifact:
    """Dominance through serialization; fills ``timings`` in place."""

    def run(name, fn):
        tick = time.perf_counter()
        try:
            return fn()
        except Exception as exc:
            raise PipelineStageError(name, exc) from exc
        finally:
            timings[name] = time.perf_counter() - tick

    n_refs = reference_set.points.shape[0]
    dominated = run("dominance", lambda: dominance.dominated_flags(solution_set))

    def compute_metrics():
        matrices = [solution_set.objective]
        if n_refs:
            matrices.append(reference_set.points)
        spec = metrics.NormalizationSpec.fit(matrices, config.normalization)
        normalized = metrics.normalize(solution_set.objective, spec)
        if n_refs:
            ref_dist = metrics.nearest_reference_distances(
                solution_set.objective, reference_set, spec
            )
        else:
            ref_dist = np.empty(0)
        sol_dist, sol_idx = metrics.nearest_solution_distances(solution_set.objective, spec)
        return spec, normalized, ref_dist, sol_dist, sol_idx

    spec, normalized_obj, ref_dist, sol_dist, sol_idx = run("metrics", compute_metrics)

    def project_decision():
        dec_spec = metrics.NormalizationSpec.fit([solution_set.decision], config.normalization)
        vectors = metrics.normalize(solution_set.decision, dec_spec)
        return projection.project(vectors, replace(config.projection, seed=config.seed + 1))

    decision_xy = run("projection_decision", project_decision)

    objective_xy, reference_xy = run(
        "projection_objective",
        lambda: projection.project_objective_space(
            solution_set.objective,
            reference_set.points,
            spec,
            replace(config.projection, seed=config.seed + 2),
        ),
    )

    density_field = None
    if n_refs:
        density_field = run(
            "density",
            lambda: density.kde_field(
                reference_xy,
                config.kde.grid_w,
                config.kde.grid_h,
                config.kde.bandwidth,
                config.kde.margin,
            ),
        )
        if n_refs >= config.lof.k + 1:

            def flag_outliers():
                scores = density.lof_scores(reference_xy, config.lof.k)
                flagged = density.outlier_indices(scores, config.lof.threshold)
                return dataclasses.replace(
                    density_field, outlier_indices=tuple(int(i) for i in flagged)
                )

            density_field = run("lof", flag_outliers)

    labels = run("clustering", lambda: clustering.hdbscan(normalized_obj, config.hdbscan))

    layout = model.Layout2D(
        method=config.projection.method,
        seed=config.seed,
        decision=decision_xy,
        objective=objective_xy,
        reference=reference_xy,
    )
    annotations = model.Annotations(
        nearest_ref_dist=ref_dist,
        nearest_sol_dist=sol_dist,
        nearest_sol_idx=sol_idx,
        dominated=dominated,
        cluster=labels,
    )
    artifact = model.AnalysisArtifact(
        solutions=solution_set,
        references=reference_set,
        layout=layout,
        density=density_field,
        annotations=annotations,
    )
    run("serialize", lambda: model.serialize_artifact(artifact))
    return artifact
