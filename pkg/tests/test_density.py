"""Density fields, lasso selection, and local outlier factor scores."""

import math

import numpy as np
import pytest

from frontscope import density
from frontscope.density import (
    LassoPolygon,
    kde_field,
    lasso_patch,
    lof_scores,
    outlier_indices,
    point_in_polygon,
    scott_bandwidth,
)
from support import brute_lof


def brute_kde_cell(points, cx, cy, h, n):
    total = 0.0
    for px, py in points:
        total += math.exp(-((cx - px) ** 2 + (cy - py) ** 2) / (2 * h * h))
    return total / (n * 2 * math.pi * h * h)


def cell_centers(lo, hi, count):
    step = (hi - lo) / count
    return lo + (np.arange(count) + 0.5) * step


def test_every_cell_matches_direct_kernel_sum():
    rng = np.random.default_rng(1)
    points = rng.standard_normal((20, 2)) * 2
    field = kde_field(points, grid_w=9, grid_h=7, bandwidth=0.8)
    x_min, x_max, y_min, y_max = field.bounds
    xc = cell_centers(x_min, x_max, 9)
    yc = cell_centers(y_min, y_max, 7)
    for row in range(7):
        for col in range(9):
            expected = brute_kde_cell(points, xc[col], yc[row], 0.8, 20)
            assert field.values[row, col] == pytest.approx(expected, abs=1e-12)


def test_single_point_peak_value_and_symmetry():
    field = kde_field(np.array([[2.0, -3.0]]), grid_w=11, grid_h=11, bandwidth=1.0)
    peak = field.values.max()
    assert peak == pytest.approx(1.0 / (2.0 * math.pi), abs=1e-9)
    assert np.unravel_index(field.values.argmax(), field.values.shape) == (5, 5)
    np.testing.assert_allclose(field.values, field.values[::-1, :], atol=1e-12)
    np.testing.assert_allclose(field.values, field.values[:, ::-1], atol=1e-12)


def test_field_mass_is_close_to_one():
    rng = np.random.default_rng(2)
    points = rng.standard_normal((500, 2))
    field = kde_field(points)
    x_min, x_max, y_min, y_max = field.bounds
    cell_area = (x_max - x_min) / field.grid_w * (y_max - y_min) / field.grid_h
    mass = field.values.sum() * cell_area
    assert 0.97 <= mass <= 1.0


def test_bounds_carry_ten_percent_margin():
    points = np.array([[0.0, 0.0], [10.0, 20.0]])
    field = kde_field(points, grid_w=4, grid_h=4, bandwidth=1.0)
    assert field.bounds == (-1.0, 11.0, -2.0, 22.0)


def test_degenerate_extent_is_widened_before_margin():
    field = kde_field(np.array([[5.0, 7.0]]), grid_w=4, grid_h=4, bandwidth=1.0)
    x_min, x_max, y_min, y_max = field.bounds
    assert (x_min + x_max) / 2 == pytest.approx(5.0)
    assert (y_min + y_max) / 2 == pytest.approx(7.0)
    assert x_max - x_min == pytest.approx(2.4)


def test_auto_bandwidth_follows_scott_rule():
    rng = np.random.default_rng(3)
    points = rng.standard_normal((200, 2)) * [2.0, 0.5]
    expected = 200 ** (-1 / 6) * points.std(axis=0).mean()
    assert scott_bandwidth(points) == pytest.approx(expected, rel=1e-12)
    field = kde_field(points)
    assert field.bandwidth == pytest.approx(expected, rel=1e-12)


def test_identical_points_fall_back_to_unit_bandwidth():
    assert scott_bandwidth(np.full((5, 2), 3.0)) == 1.0


def test_empty_points_are_rejected():
    with pytest.raises(density.EmptyPoints):
        kde_field(np.empty((0, 2)))


def test_point_in_polygon_square_cases():
    square = LassoPolygon(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]))
    points = np.array(
        [
            [0.5, 0.5],  # interior
            [0.0, 0.5],  # on an edge
            [1.0, 1.0],  # on a vertex
            [1.5, 0.5],  # outside right
            [0.5, -0.1],  # outside below
        ]
    )
    assert point_in_polygon(points, square).tolist() == [True, True, True, False, False]


def test_point_in_polygon_concave_shape():
    # a U shape: the notch between the arms is outside
    u_shape = LassoPolygon(
        np.array(
            [[0, 0], [3, 0], [3, 3], [2, 3], [2, 1], [1, 1], [1, 3], [0, 3]],
            dtype=float,
        )
    )
    points = np.array([[1.5, 2.0], [0.5, 2.0], [2.5, 2.0], [1.5, 0.5]])
    assert point_in_polygon(points, u_shape).tolist() == [False, True, True, True]


def test_polygon_validation():
    with pytest.raises(density.DegeneratePolygon):
        LassoPolygon(np.array([[0.0, 0.0], [1.0, 1.0]]))
    with pytest.raises(density.DegeneratePolygon):
        LassoPolygon(np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]))
    with pytest.raises(density.DegeneratePolygon):
        LassoPolygon(np.array([[0.0, 0.0], [1.0, np.nan], [0.0, 1.0]]))


def test_enclosing_lasso_reproduces_base_field():
    rng = np.random.default_rng(4)
    points = rng.standard_normal((40, 2))
    base = kde_field(points, grid_w=16, grid_h=16)
    hull = LassoPolygon(np.array([[-99, -99], [99, -99], [99, 99], [-99, 99]], dtype=float))
    selected, patch = lasso_patch(base, points, hull)
    np.testing.assert_array_equal(selected, np.arange(40))
    np.testing.assert_allclose(patch.values, base.values, atol=1e-12, rtol=0)
    assert patch.bounds == base.bounds
    assert patch.bandwidth == base.bandwidth


def test_partial_lasso_selects_and_averages_only_inside_points():
    points = np.array([[0.0, 0.0], [0.2, 0.1], [5.0, 5.0]])
    base = kde_field(points, grid_w=8, grid_h=8, bandwidth=0.5)
    box = LassoPolygon(np.array([[-1, -1], [1, -1], [1, 1], [-1, 1]], dtype=float))
    selected, patch = lasso_patch(base, points, box)
    assert selected.tolist() == [0, 1]
    expected = kde_field(points[:2], grid_w=8, grid_h=8, bandwidth=0.5)
    # same kernels, but evaluated on the base grid instead of a refit one
    assert patch.bounds == base.bounds
    assert patch.values.max() > base.values.max()
    assert expected.values.shape == patch.values.shape


def test_empty_lasso_selection_yields_zero_field():
    points = np.array([[0.0, 0.0], [1.0, 1.0]])
    base = kde_field(points, grid_w=8, grid_h=8, bandwidth=0.5)
    away = LassoPolygon(np.array([[10, 10], [11, 10], [11, 11], [10, 11]], dtype=float))
    selected, patch = lasso_patch(base, points, away)
    assert selected.size == 0
    np.testing.assert_array_equal(patch.values, np.zeros((8, 8)))


def test_lof_matches_brute_force_definition():
    rng = np.random.default_rng(5)
    points = rng.standard_normal((50, 2))
    got = lof_scores(points, k=10)
    expected = brute_lof(points, k=10)
    np.testing.assert_allclose(got, expected, atol=1e-9, rtol=0)


def test_lof_on_uniform_grid_is_near_one():
    xs, ys = np.meshgrid(np.arange(10.0), np.arange(10.0))
    grid = np.column_stack([xs.ravel(), ys.ravel()])
    scores = lof_scores(grid, k=10)
    interior = grid[:, 0].astype(int) % 10
    inner = (
        (grid[:, 0] >= 2) & (grid[:, 0] <= 7) & (grid[:, 1] >= 2) & (grid[:, 1] <= 7)
    )
    assert interior.shape == scores.shape
    assert np.all(scores[inner] >= 0.9) and np.all(scores[inner] <= 1.1)


def test_isolated_point_scores_highest_and_is_flagged():
    rng = np.random.default_rng(6)
    cloud = rng.standard_normal((40, 2)) * 0.5
    points = np.vstack([cloud, [[8.0, 8.0]]])
    scores = lof_scores(points, k=10)
    assert scores.argmax() == 40
    flagged = outlier_indices(scores, threshold=1.5)
    assert 40 in flagged
    assert list(flagged) == sorted(flagged)


def test_lof_requires_k_plus_one_points():
    with pytest.raises(density.TooFewPoints) as excinfo:
        lof_scores(np.zeros((10, 2)), k=10)
    assert (excinfo.value.needed, excinfo.value.got) == (11, 10)


def test_lof_handles_duplicate_points_without_overflow():
    points = np.vstack([np.zeros((6, 2)), np.ones((6, 2)), [[0.5, 0.5]]])
    scores = lof_scores(points, k=5)
    assert np.all(np.isfinite(scores))
    # inside a duplicate group every density is equal, so the ratio is one
    assert scores[0] == pytest.approx(1.0)
    # the lone point between two dense duplicate groups stands out
    assert scores[12] > 1.5


def test_outlier_threshold_is_strict():
    flagged = outlier_indices(np.array([1.5, 1.6, 0.4]), threshold=1.5)
    assert flagged.tolist() == [1]
