"""Shared helpers for the test suite: fixture factories and slow oracles.

The oracles here are deliberately naive (plain loops, no vectorization) so
they stay independent from the implementations they check.
"""

from __future__ import annotations

import math

import numpy as np

from frontscope.model import (
    AnalysisArtifact,
    Annotations,
    DensityField,
    Layout2D,
    ProblemMeta,
    ProjectionMethod,
    ReferenceSet,
    SolutionSet,
)


def make_artifact(
    seed: int = 0,
    n: int | None = None,
    r: int | None = None,
    m: int | None = None,
    d: int | None = None,
) -> AnalysisArtifact:
    """Builds a structurally valid artifact with randomized contents."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(0, 14)) if n is None else n
    r = int(rng.integers(0, 20)) if r is None else r
    m = int(rng.integers(2, 6)) if m is None else m
    d = int(rng.integers(1, 8)) if d is None else d

    sense = tuple(rng.choice(["min", "max"], size=m))
    meta = ProblemMeta(
        problem_name=f"synthetic-{seed}",
        algorithm_name="rng",
        n_decision_vars=d,
        n_objectives=m,
        n_solutions=n,
        n_references=r,
        objective_sense=sense,
    )

    def floats(*shape):
        scale = 10.0 ** rng.uniform(-3, 3)
        return rng.standard_normal(shape) * scale

    ids = None
    if n and rng.random() < 0.5:
        ids = rng.permutation(n).astype(np.int64) * 3 + 5
    solutions = SolutionSet(meta=meta, decision=floats(n, d), objective=floats(n, m), ids=ids)
    references = ReferenceSet(floats(r, m)) if r else ReferenceSet.empty(m)

    layout = Layout2D(
        method=ProjectionMethod.TSNE if rng.random() < 0.5 else ProjectionMethod.UMAP,
        seed=int(rng.integers(0, 1000)),
        decision=floats(n, 2),
        objective=floats(n, 2),
        reference=floats(r, 2),
    )

    density = None
    if r:
        w = int(rng.integers(1, 9))
        h = int(rng.integers(1, 9))
        x0, y0 = rng.standard_normal(2)
        outliers = np.flatnonzero(rng.random(r) < 0.2)
        density = DensityField(
            grid_w=w,
            grid_h=h,
            bounds=(x0, x0 + rng.uniform(0.5, 3.0), y0, y0 + rng.uniform(0.5, 3.0)),
            bandwidth=float(rng.uniform(0.05, 2.0)),
            values=np.abs(floats(h, w)),
            outlier_indices=tuple(int(i) for i in outliers),
        )

    sol_len = n if n >= 2 else 0
    idx = (np.arange(sol_len, dtype=np.int64) + 1) % n if sol_len else np.empty(0, np.int64)
    annotations = Annotations(
        nearest_ref_dist=np.abs(floats(n)) if r else np.empty(0),
        nearest_sol_dist=np.abs(floats(sol_len)),
        nearest_sol_idx=idx,
        dominated=rng.random(n) < 0.4,
        cluster=rng.integers(-1, 4, size=n),
    )
    return AnalysisArtifact(
        solutions=solutions,
        references=references,
        layout=layout,
        density=density,
        annotations=annotations,
    )


def brute_dominates(a, b, sense) -> bool:
    """Pareto dominance by definition, one comparison at a time."""
    at_least_one_better = False
    for x, y, s in zip(a, b, sense):
        better = x < y if s == "min" else x > y
        worse = x > y if s == "min" else x < y
        if worse:
            return False
        if better:
            at_least_one_better = True
    return at_least_one_better


def brute_dominated_flags(objectives, sense) -> np.ndarray:
    n = len(objectives)
    flags = np.zeros(n, dtype=bool)
    for i in range(n):
        for j in range(n):
            if i != j and brute_dominates(objectives[j], objectives[i], sense):
                flags[i] = True
                break
    return flags


def brute_nearest_to_refs(points, refs):
    """Per-point distance to the closest reference, plain loops."""
    out = np.empty(len(points))
    for i, p in enumerate(points):
        best = math.inf
        for q in refs:
            dist = math.sqrt(sum((a - b) ** 2 for a, b in zip(p, q)))
            best = min(best, dist)
        out[i] = best
    return out


def brute_nearest_neighbor(points):
    """Per-point nearest other point; ties resolved to the smallest index."""
    n = len(points)
    dist = np.empty(n)
    idx = np.empty(n, dtype=np.int64)
    for i in range(n):
        best, best_j = math.inf, -1
        for j in range(n):
            if j == i:
                continue
            cur = math.sqrt(sum((a - b) ** 2 for a, b in zip(points[i], points[j])))
            if cur < best:
                best, best_j = cur, j
        dist[i] = best
        idx[i] = best_j
    return dist, idx


def kruskal_mst_weight(weights: np.ndarray) -> float:
    """Total weight of a minimum spanning tree over a dense weight matrix."""
    n = weights.shape[0]
    edges = sorted(
        (weights[i, j], i, j) for i in range(n) for j in range(i + 1, n)
    )
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    total = 0.0
    taken = 0
    for w, i, j in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            total += w
            taken += 1
            if taken == n - 1:
                break
    return total


def brute_lof(points: np.ndarray, k: int) -> np.ndarray:
    """Local outlier factor straight from its textbook definition."""
    n = len(points)
    dist = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            dist[i, j] = math.sqrt(((points[i] - points[j]) ** 2).sum())
    k_dist = np.empty(n)
    neighborhoods = []
    for i in range(n):
        others = sorted(dist[i, j] for j in range(n) if j != i)
        k_dist[i] = others[k - 1]
        neighborhoods.append(
            [j for j in range(n) if j != i and dist[i, j] <= k_dist[i]]
        )
    lrd = np.empty(n)
    for i in range(n):
        reach = [max(k_dist[o], dist[i, o]) for o in neighborhoods[i]]
        denom = sum(reach)
        lrd[i] = len(neighborhoods[i]) / max(denom, np.finfo(float).tiny)
    lof = np.empty(n)
    for i in range(n):
        lof[i] = sum(lrd[o] for o in neighborhoods[i]) / len(neighborhoods[i]) / lrd[i]
    return lof


def gaussian_blobs(rng, centers, points_per_blob, spread, dims=None):
    """Labeled isotropic Gaussian blobs around the given centers."""
    centers = np.asarray(centers, dtype=np.float64)
    dims = centers.shape[1] if dims is None else dims
    data = []
    labels = []
    for label, center in enumerate(centers):
        data.append(center + rng.standard_normal((points_per_blob, dims)) * spread)
        labels.extend([label] * points_per_blob)
    return np.vstack(data), np.array(labels)


def knn_label_purity(points: np.ndarray, labels: np.ndarray, k: int) -> float:
    """Mean fraction of each point's k nearest neighbors sharing its label."""
    n = len(points)
    diff = points[:, None, :] - points[None, :, :]
    dist = np.sqrt((diff**2).sum(-1))
    np.fill_diagonal(dist, np.inf)
    order = np.argsort(dist, axis=1, kind="stable")[:, :k]
    same = labels[order] == labels[:, None]
    return float(same.mean())
