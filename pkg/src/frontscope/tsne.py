"""Exact symmetric t-SNE with early exaggeration and adaptive gains.

This is the original O(K^2) algorithm: per-point Gaussian bandwidths found
by binary search so every conditional distribution hits the requested
perplexity, symmetrized joint affinities, and gradient descent on the
Student-t low-dimensional similarities with momentum and per-parameter
gains.  The heavy inner loops are compiled with numba; everything else is
plain numpy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

_CHUNK = 256


@dataclass(frozen=True)
class TsneParams:
    """Hyperparameters of a t-SNE run, defaulting to the standard recipe."""

    perplexity: float = 30.0
    learning_rate: float = 200.0
    iterations: int = 1000
    early_exaggeration_factor: float = 12.0
    early_exaggeration_iters: int = 250
    momentum_initial: float = 0.5
    momentum_final: float = 0.8
    init_scale: float = 1e-4
    min_gain: float = 0.01
    trace_every: int = 50
    calibration_tol: float = 1e-5
    calibration_max_iter: int = 200


def pairwise_sq_distances(vectors: np.ndarray) -> np.ndarray:
    """Squared Euclidean distances via explicit differences.

    Explicit subtraction is slower than the dot-product expansion but does
    not lose precision when the data sits far from the origin, which keeps
    affinities translation invariant up to rounding.
    """
    vectors = np.asarray(vectors, dtype=np.float64)
    n = vectors.shape[0]
    out = np.empty((n, n))
    for start in range(0, n, _CHUNK):
        block = vectors[start : start + _CHUNK]
        diff = block[:, None, :] - vectors[None, :, :]
        out[start : start + _CHUNK] = (diff * diff).sum(axis=2)
    np.fill_diagonal(out, 0.0)
    return out


@njit(cache=True)
def _calibrate_rows(sq_dist, target_entropy, tol, max_iter):  # pragma: no cover
    """Per-row binary search for the Gaussian precision hitting the target.

    Returns the row-normalized conditional affinities and the achieved
    Shannon entropy (nats) per row.
    """
    n = sq_dist.shape[0]
    cond = np.zeros((n, n))
    entropies = np.empty(n)
    for i in range(n):
        # shift by the nearest neighbor so the largest exponent is exp(0)
        shift = np.inf
        for j in range(n):
            if j != i and sq_dist[i, j] < shift:
                shift = sq_dist[i, j]
        beta = 1.0
        beta_min = -np.inf
        beta_max = np.inf
        entropy = 0.0
        for _ in range(max_iter):
            sum_p = 0.0
            sum_dp = 0.0
            for j in range(n):
                if j == i:
                    continue
                d = sq_dist[i, j] - shift
                e = math.exp(-d * beta)
                sum_p += e
                sum_dp += d * e
            entropy = math.log(sum_p) + beta * sum_dp / sum_p
            diff = entropy - target_entropy
            if abs(diff) < tol:
                break
            if diff > 0.0:
                beta_min = beta
                beta = beta * 2.0 if beta_max == np.inf else (beta + beta_max) / 2.0
            else:
                beta_max = beta
                beta = beta / 2.0 if beta_min == -np.inf else (beta + beta_min) / 2.0
        sum_p = 0.0
        for j in range(n):
            if j != i:
                cond[i, j] = math.exp(-(sq_dist[i, j] - shift) * beta)
                sum_p += cond[i, j]
        for j in range(n):
            cond[i, j] /= sum_p
        entropies[i] = entropy
    return cond, entropies


def conditional_affinities(
    sq_dist: np.ndarray, perplexity: float, tol: float = 1e-5, max_iter: int = 200
) -> tuple[np.ndarray, np.ndarray]:
    """Row-stochastic conditional affinities at the given perplexity.

    Returns:
        (P, entropies) where P[i] is point i's conditional distribution over
        the others and entropies[i] is its Shannon entropy in nats, which
        lands within ``tol`` of log(perplexity) whenever that target is
        reachable for the row.
    """
    return _calibrate_rows(
        np.ascontiguousarray(sq_dist, dtype=np.float64),
        math.log(perplexity),
        tol,
        max_iter,
    )


def effective_perplexity(perplexity: float, n_points: int) -> float:
    """Clamps the perplexity to (K-1)/3 so calibration stays feasible."""
    return min(perplexity, (n_points - 1) / 3.0)


def joint_affinities(
    vectors: np.ndarray, params: TsneParams
) -> tuple[np.ndarray, np.ndarray]:
    """Symmetrized, unit-sum affinities plus per-row calibration entropies."""
    perp = effective_perplexity(params.perplexity, vectors.shape[0])
    cond, entropies = conditional_affinities(
        pairwise_sq_distances(vectors),
        perp,
        params.calibration_tol,
        params.calibration_max_iter,
    )
    joint = cond + cond.T
    joint /= joint.sum()
    return joint, entropies


@njit(cache=True)
def _forces(embedding, affinities, scale, num):  # pragma: no cover
    """One gradient evaluation of the exact t-SNE objective.

    Fills ``num`` with the upper-triangular Student-t numerators and returns
    (gradient, Z) where Z is the numerator sum over ordered pairs.
    """
    n = embedding.shape[0]
    z = 0.0
    for i in range(n):
        yi0 = embedding[i, 0]
        yi1 = embedding[i, 1]
        for j in range(i + 1, n):
            d0 = yi0 - embedding[j, 0]
            d1 = yi1 - embedding[j, 1]
            q = 1.0 / (1.0 + d0 * d0 + d1 * d1)
            num[i, j] = q
            z += 2.0 * q
    grad = np.zeros((n, 2))
    for i in range(n):
        yi0 = embedding[i, 0]
        yi1 = embedding[i, 1]
        acc0 = 0.0
        acc1 = 0.0
        for j in range(i + 1, n):
            q = num[i, j]
            w = (scale * affinities[i, j] - q / z) * q
            d0 = yi0 - embedding[j, 0]
            d1 = yi1 - embedding[j, 1]
            acc0 += w * d0
            acc1 += w * d1
            grad[j, 0] -= 4.0 * w * d0
            grad[j, 1] -= 4.0 * w * d1
        grad[i, 0] += 4.0 * acc0
        grad[i, 1] += 4.0 * acc1
    return grad, z


@njit(cache=True)
def _kl_divergence(affinities, scale, num, z):  # pragma: no cover
    """KL(P_eff || Q) over ordered pairs, with the usual 1e-12 floor on Q."""
    n = affinities.shape[0]
    kl = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            p = scale * affinities[i, j]
            if p > 0.0:
                q = num[i, j] / z
                if q < 1e-12:
                    q = 1e-12
                kl += 2.0 * p * math.log(p / q)
    return kl


def tsne_embed(
    vectors: np.ndarray, params: TsneParams, seed: int
) -> tuple[np.ndarray, list[float]]:
    """Embeds row vectors into 2-D.

    Returns:
        (coordinates, kl_trace) where the trace holds the KL divergence
        sampled every ``trace_every`` iterations against the affinities in
        effect at that iteration (exaggerated during the first phase).
    """
    vectors = np.asarray(vectors, dtype=np.float64)
    affinities, _ = joint_affinities(vectors, params)
    n = vectors.shape[0]
    rng = np.random.default_rng(seed)
    embedding = rng.standard_normal((n, 2)) * params.init_scale
    update = np.zeros((n, 2))
    gains = np.ones((n, 2))
    num = np.zeros((n, n))
    trace: list[float] = []
    for iteration in range(params.iterations):
        early = iteration < params.early_exaggeration_iters
        scale = params.early_exaggeration_factor if early else 1.0
        momentum = params.momentum_initial if early else params.momentum_final
        grad, z = _forces(embedding, affinities, scale, num)
        flipped = (grad > 0.0) != (update > 0.0)
        gains = np.where(flipped, gains + 0.2, gains * 0.8)
        np.maximum(gains, params.min_gain, out=gains)
        update = momentum * update - params.learning_rate * (gains * grad)
        embedding += update
        embedding -= embedding.mean(axis=0)
        if (iteration + 1) % params.trace_every == 0:
            trace.append(float(_kl_divergence(affinities, scale, num, z)))
    return embedding, trace
