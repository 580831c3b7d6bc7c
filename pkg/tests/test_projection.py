"""Embedding behavior: calibration, determinism, invariances, audit trace."""

import math

import numpy as np
import pytest

from frontscope.metrics import NormalizationMode, NormalizationSpec
from frontscope.model import ProjectionMethod
from frontscope.projection import (
    MethodMismatch,
    NonFiniteInput,
    ProjectionConfig,
    TooFewPoints,
    project,
    project_objective_space,
    run_projection,
    tsne_kl_trace,
)
from frontscope.tsne import (
    TsneParams,
    conditional_affinities,
    effective_perplexity,
    joint_affinities,
    pairwise_sq_distances,
)
from frontscope.umap import UmapParams, find_ab_params, fuzzy_graph, make_epochs_per_sample
from support import gaussian_blobs, knn_label_purity


def blob_fixture(seed=0, points=50, dims=10, sigma=0.1):
    rng = np.random.default_rng(seed)
    centers = np.eye(dims)[:3] * (10 * sigma * 14)
    return gaussian_blobs(rng, centers, points, sigma, dims=dims)


def short_tsne(**overrides):
    defaults = dict(iterations=400, early_exaggeration_iters=150)
    defaults.update(overrides)
    return ProjectionConfig(seed=9, tsne=TsneParams(**defaults))


def pairwise(coords):
    diff = coords[:, None, :] - coords[None, :, :]
    return np.sqrt((diff * diff).sum(-1))


def test_calibration_entropy_hits_log_perplexity():
    data, _ = blob_fixture()
    _, entropies = joint_affinities(data, TsneParams())
    np.testing.assert_allclose(entropies, math.log(30.0), atol=1e-5, rtol=0)


def test_equidistant_point_gets_uniform_conditional_row():
    # the origin sits at distance exactly 1.0 from every basis vector, so
    # its conditional distribution must come out uniform no matter what
    # bandwidth the calibration settles on
    data = np.vstack([np.zeros(11), np.eye(11)])
    sq = pairwise_sq_distances(data)
    perp = effective_perplexity(30.0, len(data))
    cond, _ = conditional_affinities(sq, perp)
    np.testing.assert_allclose(cond[0, 1:], 1.0 / 11.0, atol=1e-12, rtol=0)
    assert cond[0, 0] == 0.0


def test_perplexity_is_clamped_for_tiny_inputs():
    assert effective_perplexity(30.0, 7) == 2.0
    rng = np.random.default_rng(2)
    data = rng.standard_normal((7, 3))
    _, entropies = joint_affinities(data, TsneParams())
    np.testing.assert_allclose(entropies, math.log(2.0), atol=1e-5, rtol=0)


def test_duplicate_rows_have_maximal_affinity_and_land_together():
    rng = np.random.default_rng(3)
    data = rng.standard_normal((50, 6))
    data[30] = data[10]
    affinities, _ = joint_affinities(data, TsneParams())
    row = affinities[10].copy()
    assert row.argmax() == 30
    coords = project(data, short_tsne())
    dist = pairwise(coords)
    pair = dist[10, 30]
    upper = dist[np.triu_indices(50, k=1)]
    assert pair <= np.quantile(upper, 0.01)


def test_blob_embedding_purity_tsne():
    data, labels = blob_fixture()
    coords = project(data, ProjectionConfig(seed=4))
    assert knn_label_purity(coords, labels, 10) >= 0.9


def test_blob_embedding_purity_umap():
    data, labels = blob_fixture()
    coords = project(data, ProjectionConfig(method=ProjectionMethod.UMAP, seed=4))
    assert knn_label_purity(coords, labels, 10) >= 0.9


def test_same_seed_is_bit_identical_and_seeds_differ():
    rng = np.random.default_rng(5)
    data = rng.standard_normal((40, 4))
    for config in (short_tsne(), ProjectionConfig(method=ProjectionMethod.UMAP, seed=9)):
        first = project(data, config)
        second = project(data, config)
        np.testing.assert_array_equal(first, second)
    a = project(data, short_tsne())
    b = project(data, ProjectionConfig(seed=10, tsne=TsneParams(iterations=400)))
    assert not np.array_equal(a, b)


def test_translation_invariance_under_exact_shift():
    rng = np.random.default_rng(6)
    # lattice data keeps the shifted additions exactly representable, so
    # pairwise differences and therefore affinities are bit-identical
    data = np.round(rng.standard_normal((60, 5)) * 2**20) / 2**20
    for config in (short_tsne(), ProjectionConfig(method=ProjectionMethod.UMAP, seed=9)):
        base = pairwise(project(data, config))
        moved = pairwise(project(data + 7.5, config))
        denom = np.where(base == 0.0, 1.0, base)
        assert (np.abs(base - moved) / denom).max() <= 1e-6


def test_kl_trace_samples_and_monotone_tail():
    data, _ = blob_fixture(points=40)
    run = run_projection(data, ProjectionConfig(seed=7))
    trace = tsne_kl_trace(run)
    assert len(trace) == 20
    post = trace[5:]
    assert all(later <= earlier + 1e-3 for earlier, later in zip(post, post[1:]))
    assert all(v >= 0.0 for v in post)


def test_kl_trace_requires_tsne_run():
    rng = np.random.default_rng(8)
    run = run_projection(
        rng.standard_normal((20, 3)), ProjectionConfig(method=ProjectionMethod.UMAP, seed=1)
    )
    assert run.kl_trace is None
    with pytest.raises(MethodMismatch):
        tsne_kl_trace(run)


def test_input_validation():
    with pytest.raises(TooFewPoints):
        project(np.zeros((3, 2)), ProjectionConfig())
    bad = np.zeros((5, 2))
    bad[1, 1] = np.nan
    with pytest.raises(NonFiniteInput):
        project(bad, ProjectionConfig())


def test_joint_objective_embedding_blocks_and_alignment():
    rng = np.random.default_rng(9)
    solutions = rng.random((30, 3))
    references = rng.random((20, 3))
    spec = NormalizationSpec.fit([solutions, references], NormalizationMode.MIN_MAX_JOINT)
    config = short_tsne()
    sol_xy, ref_xy = project_objective_space(solutions, references, spec, config)
    assert sol_xy.shape == (30, 2)
    assert ref_xy.shape == (20, 2)
    stacked = project(
        np.vstack([(solutions - spec.lo) / (spec.hi - spec.lo), (references - spec.lo) / (spec.hi - spec.lo)]),
        config,
    )
    np.testing.assert_array_equal(np.vstack([sol_xy, ref_xy]), stacked)


def test_joint_embedding_with_no_references_matches_plain_run():
    rng = np.random.default_rng(10)
    solutions = rng.random((25, 3))
    spec = NormalizationSpec.fit([solutions], NormalizationMode.MIN_MAX_JOINT)
    config = short_tsne()
    sol_xy, ref_xy = project_objective_space(solutions, np.empty((0, 3)), spec, config)
    assert ref_xy.shape == (0, 2)
    expected = project(
        (solutions - spec.lo) / np.where(spec.hi > spec.lo, spec.hi - spec.lo, 1.0), config
    )
    np.testing.assert_array_equal(sol_xy, expected)


def test_solution_duplicated_as_reference_lands_next_to_it():
    rng = np.random.default_rng(11)
    solutions = rng.random((40, 4))
    references = np.vstack([rng.random((14, 4)), solutions[7]])
    spec = NormalizationSpec.fit([solutions, references], NormalizationMode.MIN_MAX_JOINT)
    sol_xy, ref_xy = project_objective_space(solutions, references, spec, ProjectionConfig(seed=9))
    coords = np.vstack([sol_xy, ref_xy])
    dist = pairwise(coords)
    pair = dist[7, 40 + 14]
    upper = dist[np.triu_indices(len(coords), k=1)]
    assert pair <= np.quantile(upper, 0.01)


def test_umap_curve_fit_matches_published_shape():
    a, b = find_ab_params(1.0, 0.1)
    assert a == pytest.approx(1.577, abs=0.01)
    assert b == pytest.approx(0.8951, abs=0.01)


def test_umap_graph_is_symmetric_with_unit_peak():
    rng = np.random.default_rng(12)
    data = rng.standard_normal((30, 4))
    graph = fuzzy_graph(data, 15).tocsr()
    asym = (graph - graph.T)
    assert abs(asym).max() <= 1e-12
    assert graph.data.max() <= 1.0 + 1e-12
    assert graph.data.min() > 0.0


def test_strongest_edge_is_sampled_every_epoch():
    eps = make_epochs_per_sample(np.array([0.1, 1.0, 0.5]), 200)
    assert eps[1] == 1.0
    assert eps[0] == pytest.approx(10.0)


def test_umap_duplicate_rows_have_maximal_graph_weight():
    rng = np.random.default_rng(13)
    data = rng.standard_normal((50, 6))
    data[30] = data[10]
    graph = fuzzy_graph(data, 15).tocsr()
    row = graph.getrow(10).toarray().ravel()
    assert row.argmax() == 30
    assert row[30] == pytest.approx(1.0)
