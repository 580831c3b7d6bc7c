"""UMAP built from its published parts: fuzzy graph plus SGD layout.

The stages are exact k-nearest-neighbor search, per-point bandwidth
calibration against a log2(k) target, fuzzy union symmetrization, a fitted
low-dimensional similarity curve, and a negative-sampling stochastic layout
optimizer compiled with numba.  Spectral initialization is replaced by a
seeded uniform one so runs are reproducible without an eigensolver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit
from scipy.optimize import curve_fit
from scipy.sparse import coo_matrix

SMOOTH_TOLERANCE = 1e-5
MIN_SIGMA_SCALE = 1e-3

_CHUNK = 256


@dataclass(frozen=True)
class UmapParams:
    """Hyperparameters of a UMAP run."""

    n_neighbors: int = 15
    min_dist: float = 0.1
    epochs: int = 500
    spread: float = 1.0
    negative_sample_rate: int = 5
    repulsion_strength: float = 1.0
    initial_alpha: float = 1.0


def knn(vectors: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Exact k-nearest neighbors including the point itself.

    Ties are broken toward the smaller index, so each row starts with the
    zero-distance group (normally just the point itself).

    Returns:
        (indices, distances), both (K, k).
    """
    n = vectors.shape[0]
    indices = np.empty((n, k), dtype=np.int64)
    distances = np.empty((n, k))
    for start in range(0, n, _CHUNK):
        block = vectors[start : start + _CHUNK]
        diff = block[:, None, :] - vectors[None, :, :]
        dist = np.sqrt((diff * diff).sum(axis=2))
        order = np.argsort(dist, axis=1, kind="stable")[:, :k]
        indices[start : start + _CHUNK] = order
        distances[start : start + _CHUNK] = np.take_along_axis(dist, order, axis=1)
    return indices, distances


def smooth_knn_calibration(distances: np.ndarray, n_iter: int = 64):
    """Per-point connectivity offset rho and bandwidth sigma.

    Sigma is found by binary search so the smoothed neighbor weights sum to
    log2(k); rho is the distance to the nearest distinct neighbor, which
    pins that neighbor's weight at exactly one.

    Returns:
        (sigmas, rhos), both (K,) arrays.
    """
    n, k = distances.shape
    target = math.log2(k)
    rhos = np.zeros(n)
    sigmas = np.zeros(n)
    mean_distance = float(distances.mean())
    for i in range(n):
        row = distances[i]
        non_zero = row[row > 0.0]
        if non_zero.shape[0] > 0:
            rhos[i] = non_zero[0]
        lo, hi, mid = 0.0, np.inf, 1.0
        for _ in range(n_iter):
            total = 0.0
            for j in range(1, k):
                gap = row[j] - rhos[i]
                total += math.exp(-gap / mid) if gap > 0.0 else 1.0
            if abs(total - target) < SMOOTH_TOLERANCE:
                break
            if total > target:
                hi = mid
                mid = (lo + hi) / 2.0
            else:
                lo = mid
                mid = mid * 2.0 if hi == np.inf else (lo + hi) / 2.0
        sigmas[i] = mid
        if rhos[i] > 0.0:
            mean_row = float(row.mean())
            sigmas[i] = max(sigmas[i], MIN_SIGMA_SCALE * mean_row)
        else:
            sigmas[i] = max(sigmas[i], MIN_SIGMA_SCALE * mean_distance)
    return sigmas, rhos


def fuzzy_graph(vectors: np.ndarray, n_neighbors: int) -> coo_matrix:
    """Symmetrized fuzzy neighborhood graph of the input rows.

    Directed membership strengths are combined with the fuzzy union
    ``W + W.T - W o W.T`` so the result is symmetric with entries in (0, 1].
    """
    vectors = np.asarray(vectors, dtype=np.float64)
    n = vectors.shape[0]
    k = min(n_neighbors, n - 1)
    indices, distances = knn(vectors, k)
    sigmas, rhos = smooth_knn_calibration(distances)
    rows = np.repeat(np.arange(n, dtype=np.int64), k)
    cols = indices.ravel()
    vals = np.empty(n * k)
    flat = 0
    for i in range(n):
        for j in range(k):
            if indices[i, j] == i:
                vals[flat] = 0.0
            else:
                gap = distances[i, j] - rhos[i]
                vals[flat] = 1.0 if gap <= 0.0 else math.exp(-gap / sigmas[i])
            flat += 1
    directed = coo_matrix((vals, (rows, cols)), shape=(n, n)).tocsr()
    transpose = directed.T.tocsr()
    union = directed + transpose - directed.multiply(transpose)
    union = union.tocoo()
    union.eliminate_zeros()
    return union


def find_ab_params(spread: float, min_dist: float) -> tuple[float, float]:
    """Fits the differentiable similarity curve 1/(1 + a d^(2b)).

    The target is 1 inside ``min_dist`` and an exponential tail outside,
    matching how tightly packed the embedding is allowed to get.
    """

    def curve(x, a, b):
        return 1.0 / (1.0 + a * x ** (2 * b))

    xs = np.linspace(0.0, spread * 3.0, 300)
    ys = np.where(xs < min_dist, 1.0, np.exp(-(xs - min_dist) / spread))
    (a, b), _ = curve_fit(curve, xs, ys)
    return float(a), float(b)


def make_epochs_per_sample(weights: np.ndarray, n_epochs: int) -> np.ndarray:
    """Sampling period per edge so strong edges are visited more often."""
    result = np.full(weights.shape[0], -1.0)
    n_samples = n_epochs * (weights / weights.max())
    positive = n_samples > 0.0
    result[positive] = float(n_epochs) / n_samples[positive]
    return result


@njit(cache=True)
def _clip(value):  # pragma: no cover
    if value > 4.0:
        return 4.0
    if value < -4.0:
        return -4.0
    return value


@njit(cache=True)
def _optimize_layout(
    embedding,
    head,
    tail,
    n_epochs,
    epochs_per_sample,
    a,
    b,
    gamma,
    initial_alpha,
    negative_sample_rate,
    seed,
):  # pragma: no cover
    """Attraction along edges, repulsion against sampled non-edges."""
    np.random.seed(seed)
    n_vertices = embedding.shape[0]
    alpha = initial_alpha
    epochs_per_negative = epochs_per_sample / negative_sample_rate
    next_sample = epochs_per_sample.copy()
    next_negative = epochs_per_negative.copy()
    for epoch in range(n_epochs):
        for e in range(epochs_per_sample.shape[0]):
            if next_sample[e] > epoch:
                continue
            j = head[e]
            k = tail[e]
            dx = embedding[j, 0] - embedding[k, 0]
            dy = embedding[j, 1] - embedding[k, 1]
            dist_sq = dx * dx + dy * dy
            if dist_sq > 0.0:
                coeff = (-2.0 * a * b * dist_sq ** (b - 1.0)) / (
                    a * dist_sq**b + 1.0
                )
            else:
                coeff = 0.0
            gx = _clip(coeff * dx)
            gy = _clip(coeff * dy)
            embedding[j, 0] += gx * alpha
            embedding[j, 1] += gy * alpha
            embedding[k, 0] -= gx * alpha
            embedding[k, 1] -= gy * alpha
            next_sample[e] += epochs_per_sample[e]
            n_negative = int((epoch - next_negative[e]) / epochs_per_negative[e])
            for _ in range(n_negative):
                other = np.random.randint(0, n_vertices)
                dx = embedding[j, 0] - embedding[other, 0]
                dy = embedding[j, 1] - embedding[other, 1]
                dist_sq = dx * dx + dy * dy
                if dist_sq > 0.0:
                    coeff = (2.0 * gamma * b) / (
                        (0.001 + dist_sq) * (a * dist_sq**b + 1.0)
                    )
                elif j == other:
                    continue
                else:
                    coeff = 0.0
                if coeff > 0.0:
                    gx = _clip(coeff * dx)
                    gy = _clip(coeff * dy)
                else:
                    gx = 4.0
                    gy = 4.0
                embedding[j, 0] += gx * alpha
                embedding[j, 1] += gy * alpha
            next_negative[e] += n_negative * epochs_per_negative[e]
        alpha = initial_alpha * (1.0 - epoch / n_epochs)
    return embedding


def umap_embed(vectors: np.ndarray, params: UmapParams, seed: int) -> np.ndarray:
    """Embeds row vectors into 2-D with a seeded random initialization."""
    vectors = np.asarray(vectors, dtype=np.float64)
    graph = fuzzy_graph(vectors, params.n_neighbors)
    data = graph.data.copy()
    threshold = data.max() / float(params.epochs)
    data[data < threshold] = 0.0
    keep = data > 0.0
    head = graph.row[keep]
    tail = graph.col[keep]
    epochs_per_sample = make_epochs_per_sample(data[keep], params.epochs)
    a, b = find_ab_params(params.spread, params.min_dist)
    rng = np.random.default_rng(seed)
    embedding = rng.uniform(-10.0, 10.0, size=(vectors.shape[0], 2))
    return _optimize_layout(
        embedding,
        head,
        tail,
        params.epochs,
        epochs_per_sample,
        a,
        b,
        params.repulsion_strength,
        params.initial_alpha,
        params.negative_sample_rate,
        seed,
    )
