"""Core data model and JSON interchange format for annotated solution sets.

The types in this module describe one fully preprocessed dataset: the raw
solution set, the reference front it is compared against, a 2-D layout of
both point clouds, an optional density field over the reference layout, and
per-solution annotations.  ``serialize_artifact`` and ``parse_artifact``
convert between these types and a canonical JSON document whose layout is
stable enough to diff byte by byte.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np

SCHEMA_VERSION = "1.0"

_VERSION_PATTERN = re.compile(r"(\d+)\.(\d+)")
_SENSE_VALUES = ("min", "max")


class ArtifactError(ValueError):
    """Base class for artifact construction and parsing failures."""


class MalformedJson(ArtifactError):
    """Raised when the input is not syntactically valid JSON."""


class SchemaViolation(ArtifactError):
    """Raised when a document is valid JSON but does not match the schema.

    Attributes:
        path: Dotted path to the offending location, for example
            ``"solutions[3].obj"``.  Empty for problems at the root.
    """

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


class DimensionMismatch(ArtifactError):
    """Raised when an array has the wrong length for its context.

    Attributes:
        path: Dotted path to the offending array.
        expected: Length required by the surrounding document.
        got: Length actually found.
    """

    def __init__(self, path: str, expected: int, got: int):
        super().__init__(f"{path}: expected length {expected}, got {got}")
        self.path = path
        self.expected = expected
        self.got = got


class NonFiniteValue(ArtifactError):
    """Raised when a numeric field is NaN, infinite, or null.

    Attributes:
        path: Dotted path to the offending value.
    """

    def __init__(self, path: str):
        super().__init__(f"{path}: value must be a finite number")
        self.path = path


class ProjectionMethod(Enum):
    """Dimensionality-reduction method used to produce a 2-D layout."""

    TSNE = "tsne"
    UMAP = "umap"


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _as_matrix(
    values: Any, n_rows: int, n_cols: int, path: str, dtype=np.float64
) -> np.ndarray:
    """Converts ``values`` to a read-only (n_rows, n_cols) array.

    Raises:
        DimensionMismatch: If the shape disagrees with the expected one.
        NonFiniteValue: If any float entry is NaN or infinite.
    """
    arr = np.array(values, dtype=dtype)
    if arr.size == 0:
        arr = arr.reshape(0, n_cols)
    if arr.ndim != 2:
        raise SchemaViolation(path, f"expected a 2-D array, got {arr.ndim}-D")
    if arr.shape[0] != n_rows:
        raise DimensionMismatch(path, n_rows, arr.shape[0])
    if arr.shape[1] != n_cols:
        raise DimensionMismatch(f"{path}[0]", n_cols, arr.shape[1])
    if dtype == np.float64 and not np.all(np.isfinite(arr)):
        raise NonFiniteValue(path)
    return _readonly(arr)


def _as_vector(values: Any, n: int, path: str, dtype=np.float64) -> np.ndarray:
    arr = np.atleast_1d(np.array(values, dtype=dtype))
    if arr.ndim != 1:
        raise SchemaViolation(path, f"expected a 1-D array, got {arr.ndim}-D")
    if arr.shape[0] != n:
        raise DimensionMismatch(path, n, arr.shape[0])
    if dtype == np.float64 and not np.all(np.isfinite(arr)):
        raise NonFiniteValue(path)
    return _readonly(arr)


@dataclass(frozen=True)
class ProblemMeta:
    """Descriptive header for one preprocessed dataset.

    ``objective_sense`` holds one ``"min"`` or ``"max"`` flag per objective;
    it defaults to all-minimize when left empty.
    """

    problem_name: str
    algorithm_name: str
    n_decision_vars: int
    n_objectives: int
    n_solutions: int
    n_references: int
    objective_sense: tuple[str, ...] = ()

    def __post_init__(self):
        if self.n_decision_vars < 1:
            raise SchemaViolation("meta.n_dec", "must be at least 1")
        if self.n_objectives < 2:
            raise SchemaViolation("meta.n_obj", "must be at least 2")
        if self.n_solutions < 0:
            raise SchemaViolation("meta.n_solutions", "must be non-negative")
        if self.n_references < 0:
            raise SchemaViolation("meta.n_references", "must be non-negative")
        sense = tuple(self.objective_sense) or ("min",) * self.n_objectives
        if len(sense) != self.n_objectives:
            raise DimensionMismatch("meta.sense", self.n_objectives, len(sense))
        for i, entry in enumerate(sense):
            if entry not in _SENSE_VALUES:
                raise SchemaViolation(f"meta.sense[{i}]", f"unknown sense {entry!r}")
        object.__setattr__(self, "objective_sense", sense)


@dataclass(frozen=True, eq=False)
class Solution:
    """One candidate solution: a decision vector and its objective vector."""

    id: int
    decision: np.ndarray
    objective: np.ndarray


@dataclass(frozen=True, eq=False)
class SolutionSet:
    """All solutions of one run, stored as dense row-per-solution matrices.

    ``ids`` defaults to ``0..N-1`` and exists so that externally supplied
    identifiers survive a round trip through the JSON format.
    """

    meta: ProblemMeta
    decision: np.ndarray
    objective: np.ndarray
    ids: np.ndarray = None  # type: ignore[assignment]

    def __post_init__(self):
        n = self.meta.n_solutions
        object.__setattr__(
            self,
            "decision",
            _as_matrix(self.decision, n, self.meta.n_decision_vars, "solutions.dec"),
        )
        object.__setattr__(
            self,
            "objective",
            _as_matrix(self.objective, n, self.meta.n_objectives, "solutions.obj"),
        )
        ids = np.arange(n, dtype=np.int64) if self.ids is None else self.ids
        ids = _as_vector(ids, n, "solutions.id", dtype=np.int64)
        if len(np.unique(ids)) != n:
            raise SchemaViolation("solutions.id", "identifiers must be unique")
        object.__setattr__(self, "ids", ids)

    def __len__(self) -> int:
        return self.meta.n_solutions

    def solution(self, index: int) -> Solution:
        return Solution(
            id=int(self.ids[index]),
            decision=self.decision[index],
            objective=self.objective[index],
        )


@dataclass(frozen=True, eq=False)
class ReferenceSet:
    """Reference front the solutions are compared against, possibly empty."""

    points: np.ndarray

    def __post_init__(self):
        arr = np.array(self.points, dtype=np.float64)
        if arr.ndim != 2:
            raise SchemaViolation("references", f"expected a 2-D array, got {arr.ndim}-D")
        if not np.all(np.isfinite(arr)):
            raise NonFiniteValue("references")
        object.__setattr__(self, "points", _readonly(arr))

    @classmethod
    def empty(cls, n_objectives: int) -> "ReferenceSet":
        return cls(np.empty((0, n_objectives), dtype=np.float64))

    def __len__(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True, eq=False)
class Layout2D:
    """2-D coordinates for both point clouds under one projection run."""

    method: ProjectionMethod
    seed: int
    decision: np.ndarray
    objective: np.ndarray
    reference: np.ndarray

    def __post_init__(self):
        if not isinstance(self.method, ProjectionMethod):
            raise SchemaViolation("layout.method", f"unknown method {self.method!r}")
        n = np.shape(self.decision)[0] if np.size(self.decision) else 0
        r = np.shape(self.reference)[0] if np.size(self.reference) else 0
        object.__setattr__(self, "decision", _as_matrix(self.decision, n, 2, "layout.decision"))
        object.__setattr__(self, "objective", _as_matrix(self.objective, n, 2, "layout.objective"))
        object.__setattr__(self, "reference", _as_matrix(self.reference, r, 2, "layout.reference"))


@dataclass(frozen=True, eq=False)
class DensityField:
    """Gaussian kernel density estimate rasterized on a regular grid.

    ``values`` is stored as a (grid_h, grid_w) matrix whose row 0 lies at the
    ``y_min`` edge of ``bounds``.  ``outlier_indices`` lists reference points
    flagged as low-density outliers, strictly increasing.
    """

    grid_w: int
    grid_h: int
    bounds: tuple[float, float, float, float]
    bandwidth: float
    values: np.ndarray
    outlier_indices: tuple[int, ...] = ()

    def __post_init__(self):
        if self.grid_w < 1:
            raise SchemaViolation("density.w", "must be at least 1")
        if self.grid_h < 1:
            raise SchemaViolation("density.h", "must be at least 1")
        bounds = tuple(float(b) for b in self.bounds)
        if len(bounds) != 4:
            raise DimensionMismatch("density.bounds", 4, len(bounds))
        if not all(math.isfinite(b) for b in bounds):
            raise NonFiniteValue("density.bounds")
        x_min, x_max, y_min, y_max = bounds
        if not (x_min < x_max and y_min < y_max):
            raise SchemaViolation("density.bounds", "bounds must have positive extent")
        object.__setattr__(self, "bounds", bounds)
        bandwidth = float(self.bandwidth)
        if not math.isfinite(bandwidth):
            raise NonFiniteValue("density.bandwidth")
        if bandwidth <= 0.0:
            raise SchemaViolation("density.bandwidth", "must be positive")
        object.__setattr__(self, "bandwidth", bandwidth)
        values = np.array(self.values, dtype=np.float64)
        if values.ndim == 1:
            if values.shape[0] != self.grid_w * self.grid_h:
                raise DimensionMismatch(
                    "density.values", self.grid_w * self.grid_h, values.shape[0]
                )
            values = values.reshape(self.grid_h, self.grid_w)
        if values.shape != (self.grid_h, self.grid_w):
            raise DimensionMismatch("density.values", self.grid_w * self.grid_h, values.size)
        if not np.all(np.isfinite(values)):
            raise NonFiniteValue("density.values")
        if np.any(values < 0.0):
            raise SchemaViolation("density.values", "densities must be non-negative")
        object.__setattr__(self, "values", _readonly(values))
        outliers = tuple(int(i) for i in self.outlier_indices)
        if any(i < 0 for i in outliers):
            raise SchemaViolation("density.outliers", "indices must be non-negative")
        if any(b <= a for a, b in zip(outliers, outliers[1:])):
            raise SchemaViolation("density.outliers", "indices must be strictly increasing")
        object.__setattr__(self, "outlier_indices", outliers)


@dataclass(frozen=True, eq=False)
class Annotations:
    """Per-solution derived attributes, all aligned with solution order.

    ``nearest_ref_dist`` is empty when there is no reference set, and the
    ``nearest_sol_*`` arrays are empty when there are fewer than two
    solutions.  ``cluster`` uses ``-1`` for noise.
    """

    nearest_ref_dist: np.ndarray
    nearest_sol_dist: np.ndarray
    nearest_sol_idx: np.ndarray
    dominated: np.ndarray
    cluster: np.ndarray

    def __post_init__(self):
        n = np.shape(self.dominated)[0] if np.size(self.dominated) else 0
        dominated = _as_vector(self.dominated, n, "annotations.dominated", dtype=np.bool_)
        cluster = _as_vector(self.cluster, n, "annotations.cluster", dtype=np.int64)
        if cluster.size and cluster.min() < -1:
            raise SchemaViolation("annotations.cluster", "labels must be -1 or higher")
        n_ref = np.size(self.nearest_ref_dist)
        ref_dist = _as_vector(self.nearest_ref_dist, n_ref, "annotations.nearest_ref_dist")
        if ref_dist.shape[0] not in (0, n):
            raise DimensionMismatch("annotations.nearest_ref_dist", n, ref_dist.shape[0])
        if ref_dist.size and ref_dist.min() < 0.0:
            raise SchemaViolation("annotations.nearest_ref_dist", "distances must be non-negative")
        n_sol = np.size(self.nearest_sol_dist)
        sol_dist = _as_vector(self.nearest_sol_dist, n_sol, "annotations.nearest_sol_dist")
        sol_idx = _as_vector(
            self.nearest_sol_idx, n_sol, "annotations.nearest_sol_idx", dtype=np.int64
        )
        if sol_dist.shape[0] not in (0, n):
            raise DimensionMismatch("annotations.nearest_sol_dist", n, sol_dist.shape[0])
        if sol_dist.size and sol_dist.min() < 0.0:
            raise SchemaViolation("annotations.nearest_sol_dist", "distances must be non-negative")
        if sol_idx.size:
            if sol_idx.min() < 0 or sol_idx.max() >= n:
                raise SchemaViolation("annotations.nearest_sol_idx", "index out of range")
            if np.any(sol_idx == np.arange(n, dtype=np.int64)):
                raise SchemaViolation(
                    "annotations.nearest_sol_idx", "a solution cannot be its own neighbor"
                )
        for name, arr in (
            ("nearest_ref_dist", ref_dist),
            ("nearest_sol_dist", sol_dist),
            ("nearest_sol_idx", sol_idx),
            ("dominated", dominated),
            ("cluster", cluster),
        ):
            object.__setattr__(self, name, arr)


@dataclass(frozen=True, eq=False)
class AnalysisArtifact:
    """One fully preprocessed dataset, ready to serialize or serve.

    Construction cross-checks every component against the counts declared in
    ``solutions.meta``, so an artifact that exists is internally consistent
    and ``serialize_artifact`` cannot fail on it.
    """

    solutions: SolutionSet
    references: ReferenceSet
    layout: Layout2D
    density: DensityField | None
    annotations: Annotations
    schema_version: str = SCHEMA_VERSION

    def __post_init__(self):
        meta = self.solutions.meta
        match = _VERSION_PATTERN.fullmatch(self.schema_version)
        if match is None:
            raise SchemaViolation("schema_version", "expected MAJOR.MINOR digits")
        if int(match.group(1)) != 1:
            raise SchemaViolation(
                "schema_version", f"unsupported major version {match.group(1)}"
            )
        n, r, m = meta.n_solutions, meta.n_references, meta.n_objectives
        if self.references.points.shape != (r, m):
            raise DimensionMismatch("references", r, self.references.points.shape[0])
        if self.layout.decision.shape[0] != n:
            raise DimensionMismatch("layout.decision", n, self.layout.decision.shape[0])
        if self.layout.reference.shape[0] != r:
            raise DimensionMismatch("layout.reference", r, self.layout.reference.shape[0])
        if r == 0 and self.density is not None:
            raise SchemaViolation("density", "must be null when there are no references")
        if r > 0 and self.density is None:
            raise SchemaViolation("density", "required when references are present")
        if self.density is not None and self.density.outlier_indices:
            if self.density.outlier_indices[-1] >= r:
                raise SchemaViolation("density.outliers", "index out of range")
        if self.annotations.dominated.shape[0] != n:
            raise DimensionMismatch("annotations.dominated", n, self.annotations.dominated.shape[0])
        expected_ref = n if r > 0 else 0
        if self.annotations.nearest_ref_dist.shape[0] != expected_ref:
            raise DimensionMismatch(
                "annotations.nearest_ref_dist",
                expected_ref,
                self.annotations.nearest_ref_dist.shape[0],
            )
        expected_sol = n if n >= 2 else 0
        if self.annotations.nearest_sol_dist.shape[0] != expected_sol:
            raise DimensionMismatch(
                "annotations.nearest_sol_dist",
                expected_sol,
                self.annotations.nearest_sol_dist.shape[0],
            )

    @property
    def meta(self) -> ProblemMeta:
        return self.solutions.meta


def _meta_to_dict(meta: ProblemMeta) -> dict[str, Any]:
    return {
        "problem": meta.problem_name,
        "algorithm": meta.algorithm_name,
        "n_dec": meta.n_decision_vars,
        "n_obj": meta.n_objectives,
        "n_solutions": meta.n_solutions,
        "n_references": meta.n_references,
        "sense": list(meta.objective_sense),
    }


def density_to_dict(density: DensityField) -> dict[str, Any]:
    """Returns the JSON object form of a density field (schema key order)."""
    return {
        "w": density.grid_w,
        "h": density.grid_h,
        "bounds": [float(b) for b in density.bounds],
        "bandwidth": density.bandwidth,
        "values": density.values.ravel().tolist(),
        "outliers": list(density.outlier_indices),
    }


def artifact_to_dict(artifact: AnalysisArtifact) -> dict[str, Any]:
    """Returns the full document as plain Python containers."""
    sols = artifact.solutions
    dec = sols.decision.tolist()
    obj = sols.objective.tolist()
    ids = sols.ids.tolist()
    return {
        "schema_version": artifact.schema_version,
        "meta": _meta_to_dict(sols.meta),
        "solutions": [
            {"id": ids[i], "dec": dec[i], "obj": obj[i]} for i in range(len(sols))
        ],
        "references": artifact.references.points.tolist(),
        "layout": {
            "method": artifact.layout.method.value,
            "seed": artifact.layout.seed,
            "decision": artifact.layout.decision.tolist(),
            "objective": artifact.layout.objective.tolist(),
            "reference": artifact.layout.reference.tolist(),
        },
        "density": None if artifact.density is None else density_to_dict(artifact.density),
        "annotations": {
            "nearest_ref_dist": artifact.annotations.nearest_ref_dist.tolist(),
            "nearest_sol_dist": artifact.annotations.nearest_sol_dist.tolist(),
            "nearest_sol_idx": artifact.annotations.nearest_sol_idx.tolist(),
            "dominated": artifact.annotations.dominated.tolist(),
            "cluster": artifact.annotations.cluster.tolist(),
        },
    }


def dumps_canonical(document: Any) -> bytes:
    """Serializes plain containers to compact UTF-8 JSON, rejecting NaN."""
    return json.dumps(
        document, ensure_ascii=False, allow_nan=False, separators=(",", ":")
    ).encode("utf-8")


def serialize_artifact(artifact: AnalysisArtifact) -> bytes:
    """Serializes an artifact to canonical JSON bytes.

    The output is deterministic: fixed key order, no whitespace, and floats
    printed with the shortest representation that round-trips, so equal
    artifacts always serialize to identical bytes.
    """
    return dumps_canonical(artifact_to_dict(artifact))


def _join(path: str, key: str) -> str:
    return f"{path}.{key}" if path else key


def _get(node: Any, key: str, path: str) -> Any:
    if not isinstance(node, dict):
        raise SchemaViolation(path, "expected an object")
    if key not in node:
        raise SchemaViolation(_join(path, key), "missing required key")
    return node[key]


def _string(value: Any, path: str) -> str:
    if not isinstance(value, str):
        raise SchemaViolation(path, "expected a string")
    return value


def _integer(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaViolation(path, "expected an integer")
    return value


def _boolean(value: Any, path: str) -> bool:
    if not isinstance(value, bool):
        raise SchemaViolation(path, "expected a boolean")
    return value


def _finite(value: Any, path: str) -> float:
    if value is None:
        raise NonFiniteValue(path)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaViolation(path, "expected a number")
    number = float(value)
    if not math.isfinite(number):
        raise NonFiniteValue(path)
    return number


def _list_of(value: Any, path: str) -> list:
    if not isinstance(value, list):
        raise SchemaViolation(path, "expected an array")
    return value


def _sized_list(value: Any, n: int, path: str) -> list:
    items = _list_of(value, path)
    if len(items) != n:
        raise DimensionMismatch(path, n, len(items))
    return items


def _float_vector(value: Any, n: int, path: str) -> list[float]:
    items = _sized_list(value, n, path)
    return [_finite(v, f"{path}[{i}]") for i, v in enumerate(items)]


def _float_rows(value: Any, n_rows: int, n_cols: int, path: str) -> list[list[float]]:
    rows = _sized_list(value, n_rows, path)
    return [_float_vector(row, n_cols, f"{path}[{i}]") for i, row in enumerate(rows)]


def _parse_meta(node: Any) -> ProblemMeta:
    problem = _string(_get(node, "problem", "meta"), "meta.problem")
    algorithm = _string(_get(node, "algorithm", "meta"), "meta.algorithm")
    n_dec = _integer(_get(node, "n_dec", "meta"), "meta.n_dec")
    n_obj = _integer(_get(node, "n_obj", "meta"), "meta.n_obj")
    n_solutions = _integer(_get(node, "n_solutions", "meta"), "meta.n_solutions")
    n_references = _integer(_get(node, "n_references", "meta"), "meta.n_references")
    sense_items = _sized_list(_get(node, "sense", "meta"), n_obj, "meta.sense")
    sense = tuple(_string(s, f"meta.sense[{i}]") for i, s in enumerate(sense_items))
    return ProblemMeta(
        problem_name=problem,
        algorithm_name=algorithm,
        n_decision_vars=n_dec,
        n_objectives=n_obj,
        n_solutions=n_solutions,
        n_references=n_references,
        objective_sense=sense,
    )


def _parse_solutions(node: Any, meta: ProblemMeta):
    entries = _sized_list(node, meta.n_solutions, "solutions")
    ids = np.empty(meta.n_solutions, dtype=np.int64)
    dec = np.empty((meta.n_solutions, meta.n_decision_vars), dtype=np.float64)
    obj = np.empty((meta.n_solutions, meta.n_objectives), dtype=np.float64)
    for i, entry in enumerate(entries):
        path = f"solutions[{i}]"
        ids[i] = _integer(_get(entry, "id", path), f"{path}.id")
        dec[i] = _float_vector(_get(entry, "dec", path), meta.n_decision_vars, f"{path}.dec")
        obj[i] = _float_vector(_get(entry, "obj", path), meta.n_objectives, f"{path}.obj")
    return ids, dec, obj


def _parse_layout(node: Any, n: int, r: int) -> Layout2D:
    method_name = _string(_get(node, "method", "layout"), "layout.method")
    try:
        method = ProjectionMethod(method_name)
    except ValueError:
        raise SchemaViolation("layout.method", f"unknown method {method_name!r}") from None
    seed = _integer(_get(node, "seed", "layout"), "layout.seed")
    decision = _float_rows(_get(node, "decision", "layout"), n, 2, "layout.decision")
    objective = _float_rows(_get(node, "objective", "layout"), n, 2, "layout.objective")
    reference = _float_rows(_get(node, "reference", "layout"), r, 2, "layout.reference")
    return Layout2D(
        method=method,
        seed=seed,
        decision=np.array(decision, dtype=np.float64).reshape(n, 2),
        objective=np.array(objective, dtype=np.float64).reshape(n, 2),
        reference=np.array(reference, dtype=np.float64).reshape(r, 2),
    )


def _parse_density(node: Any, n_references: int) -> DensityField | None:
    if node is None:
        if n_references > 0:
            raise SchemaViolation("density", "required when references are present")
        return None
    if n_references == 0:
        raise SchemaViolation("density", "must be null when there are no references")
    w = _integer(_get(node, "w", "density"), "density.w")
    h = _integer(_get(node, "h", "density"), "density.h")
    if w < 1:
        raise SchemaViolation("density.w", "must be at least 1")
    if h < 1:
        raise SchemaViolation("density.h", "must be at least 1")
    bounds = _float_vector(_get(node, "bounds", "density"), 4, "density.bounds")
    bandwidth = _finite(_get(node, "bandwidth", "density"), "density.bandwidth")
    values = _float_vector(_get(node, "values", "density"), w * h, "density.values")
    outlier_items = _list_of(_get(node, "outliers", "density"), "density.outliers")
    outliers = []
    for i, item in enumerate(outlier_items):
        index = _integer(item, f"density.outliers[{i}]")
        if index >= n_references:
            raise SchemaViolation(f"density.outliers[{i}]", "index out of range")
        outliers.append(index)
    return DensityField(
        grid_w=w,
        grid_h=h,
        bounds=tuple(bounds),
        bandwidth=bandwidth,
        values=np.array(values, dtype=np.float64).reshape(h, w),
        outlier_indices=tuple(outliers),
    )


def _parse_annotations(node: Any, n: int, r: int) -> Annotations:
    ref_len = n if r > 0 else 0
    sol_len = n if n >= 2 else 0
    ref_dist = _float_vector(
        _get(node, "nearest_ref_dist", "annotations"), ref_len, "annotations.nearest_ref_dist"
    )
    sol_dist = _float_vector(
        _get(node, "nearest_sol_dist", "annotations"), sol_len, "annotations.nearest_sol_dist"
    )
    idx_items = _sized_list(
        _get(node, "nearest_sol_idx", "annotations"), sol_len, "annotations.nearest_sol_idx"
    )
    sol_idx = [
        _integer(v, f"annotations.nearest_sol_idx[{i}]") for i, v in enumerate(idx_items)
    ]
    dominated_items = _sized_list(
        _get(node, "dominated", "annotations"), n, "annotations.dominated"
    )
    dominated = [
        _boolean(v, f"annotations.dominated[{i}]") for i, v in enumerate(dominated_items)
    ]
    cluster_items = _sized_list(_get(node, "cluster", "annotations"), n, "annotations.cluster")
    cluster = [_integer(v, f"annotations.cluster[{i}]") for i, v in enumerate(cluster_items)]
    return Annotations(
        nearest_ref_dist=np.array(ref_dist, dtype=np.float64),
        nearest_sol_dist=np.array(sol_dist, dtype=np.float64),
        nearest_sol_idx=np.array(sol_idx, dtype=np.int64),
        dominated=np.array(dominated, dtype=np.bool_),
        cluster=np.array(cluster, dtype=np.int64),
    )


def parse_artifact(data: bytes | str) -> AnalysisArtifact:
    """Parses canonical JSON bytes back into an ``AnalysisArtifact``.

    Args:
        data: UTF-8 bytes or an already decoded string.

    Raises:
        MalformedJson: On undecodable bytes or invalid JSON syntax.
        SchemaViolation: On structural problems, with the offending path.
        DimensionMismatch: On arrays whose length contradicts the header.
        NonFiniteValue: On null, NaN, or infinite numeric entries.
    """
    if isinstance(data, (bytes, bytearray)):
        try:
            text = bytes(data).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedJson(f"invalid UTF-8: {exc}") from None
    else:
        text = data
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedJson(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise SchemaViolation("", "expected a top-level object")

    version = _string(_get(doc, "schema_version", ""), "schema_version")
    match = _VERSION_PATTERN.fullmatch(version)
    if match is None:
        raise SchemaViolation("schema_version", "expected MAJOR.MINOR digits")
    if int(match.group(1)) != 1:
        raise SchemaViolation("schema_version", f"unsupported major version {match.group(1)}")

    meta = _parse_meta(_get(doc, "meta", ""))
    n, r, m = meta.n_solutions, meta.n_references, meta.n_objectives
    ids, dec, obj = _parse_solutions(_get(doc, "solutions", ""), meta)
    references = _float_rows(_get(doc, "references", ""), r, m, "references")
    layout = _parse_layout(_get(doc, "layout", ""), n, r)
    density = _parse_density(_get(doc, "density", "") if "density" in doc else None, r)
    annotations = _parse_annotations(_get(doc, "annotations", ""), n, r)

    solutions = SolutionSet(meta=meta, decision=dec, objective=obj, ids=ids)
    reference_set = ReferenceSet(np.array(references, dtype=np.float64).reshape(r, m))
    return AnalysisArtifact(
        solutions=solutions,
        references=reference_set,
        layout=layout,
        density=density,
        annotations=annotations,
        schema_version=version,
    )
