"""Density fields over 2-D point clouds, lasso selection, and outliers.

The density estimate is a plain Gaussian kernel sum evaluated at the centers
of a regular grid.  Outliers are scored with the local outlier factor in the
same 2-D space the density is computed in, so a flagged point is one that
sits visibly apart from its neighbors in the picture the user looks at.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from frontscope.model import DensityField

DEFAULT_GRID_W = 256
DEFAULT_GRID_H = 256
DEFAULT_MARGIN = 0.1
DEFAULT_LOF_K = 10
DEFAULT_LOF_THRESHOLD = 1.5


class DensityError(ValueError):
    """Base class for density and outlier computation failures."""


class EmptyPoints(DensityError):
    """Raised when a density field is requested over no points."""


class TooFewPoints(DensityError):
    """Raised when fewer points than neighbors are given to the LOF."""

    def __init__(self, needed: int, got: int):
        super().__init__(f"local outlier factor needs at least {needed} points, got {got}")
        self.needed = needed
        self.got = got


class DegeneratePolygon(DensityError):
    """Raised for polygons with fewer than three vertices or zero area."""


@dataclass(frozen=True)
class LassoPolygon:
    """A simple closed polygon, stored as its vertex ring.

    The closing edge from the last vertex back to the first is implicit.
    """

    vertices: np.ndarray

    def __post_init__(self):
        arr = np.array(self.vertices, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise DegeneratePolygon("polygon vertices must be an (V, 2) array")
        if arr.shape[0] < 3:
            raise DegeneratePolygon("polygon needs at least three vertices")
        if not np.all(np.isfinite(arr)):
            raise DegeneratePolygon("polygon vertices must be finite")
        x, y = arr[:, 0], arr[:, 1]
        area = 0.5 * np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y)
        if area == 0.0:
            raise DegeneratePolygon("polygon has zero area")
        arr.setflags(write=False)
        object.__setattr__(self, "vertices", arr)


def _field_bounds(points: np.ndarray, margin: float) -> tuple[float, float, float, float]:
    """Bounding box grown by ``margin`` of its extent on each side.

    A zero-extent axis is first widened to plus and minus one around the
    value so the grid always has area; the margin then applies to that
    widened extent.
    """
    mins = points.min(axis=0)
    maxs = points.max(axis=0)
    lo = np.empty(2)
    hi = np.empty(2)
    for axis in range(2):
        a, b = float(mins[axis]), float(maxs[axis])
        if a == b:
            a, b = a - 1.0, b + 1.0
        pad = margin * (b - a)
        lo[axis], hi[axis] = a - pad, b + pad
    return (lo[0], hi[0], lo[1], hi[1])


def _cell_centers(lo: float, hi: float, count: int) -> np.ndarray:
    step = (hi - lo) / count
    return lo + (np.arange(count) + 0.5) * step


def scott_bandwidth(points: np.ndarray) -> float:
    """Scott's rule for 2-D data: n^(-1/6) times the mean per-axis spread."""
    n = points.shape[0]
    sigma = float(np.mean(points.std(axis=0)))
    if sigma <= 0.0:
        return 1.0
    return n ** (-1.0 / 6.0) * sigma


def kde_field(
    points: np.ndarray,
    grid_w: int = DEFAULT_GRID_W,
    grid_h: int = DEFAULT_GRID_H,
    bandwidth: float | None = None,
    margin: float = DEFAULT_MARGIN,
) -> DensityField:
    """Evaluates a Gaussian kernel density estimate on a regular grid.

    The value at each cell is the average of isotropic Gaussian kernels
    centered on the points, evaluated at the cell center:
    ``(1 / (n 2 pi h^2)) * sum_j exp(-||c - p_j||^2 / (2 h^2))``.
    Row 0 of the result lies at the ``y_min`` edge.

    Args:
        points: (R, 2) point cloud, R >= 1.
        grid_w: Number of cells along x.
        grid_h: Number of cells along y.
        bandwidth: Kernel width h; None selects Scott's rule.
        margin: Fraction of the extent added on each side of the bounds.

    Raises:
        EmptyPoints: If the point cloud is empty.
    """
    points = np.asarray(points, dtype=np.float64)
    if points.shape[0] == 0:
        raise EmptyPoints("density field needs at least one point")
    if bandwidth is None:
        bandwidth = scott_bandwidth(points)
    bounds = _field_bounds(points, margin)
    values = _kernel_grid(points, grid_w, grid_h, bounds, bandwidth, points.shape[0])
    return DensityField(
        grid_w=grid_w, grid_h=grid_h, bounds=bounds, bandwidth=bandwidth, values=values
    )


def _kernel_grid(
    points: np.ndarray,
    grid_w: int,
    grid_h: int,
    bounds: tuple[float, float, float, float],
    bandwidth: float,
    normalizer: int,
) -> np.ndarray:
    """Shared kernel sum, separable in x and y for speed."""
    x_min, x_max, y_min, y_max = bounds
    xc = _cell_centers(x_min, x_max, grid_w)
    yc = _cell_centers(y_min, y_max, grid_h)
    inv = 1.0 / (2.0 * bandwidth * bandwidth)
    if points.shape[0] == 0:
        return np.zeros((grid_h, grid_w))
    # exp(-(dx^2+dy^2)/(2h^2)) factors into a (h x R) @ (R x w) product
    ey = np.exp(-((yc[:, None] - points[None, :, 1]) ** 2) * inv)
    ex = np.exp(-((points[:, None, 0] - xc[None, :]) ** 2) * inv)
    scale = 1.0 / (normalizer * 2.0 * math.pi * bandwidth * bandwidth)
    return (ey @ ex) * scale


def point_in_polygon(points: np.ndarray, polygon: LassoPolygon) -> np.ndarray:
    """Even-odd ray-casting membership test, boundary counts as inside.

    Returns:
        Boolean array with one entry per point.
    """
    points = np.asarray(points, dtype=np.float64)
    if points.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    px, py = points[:, 0], points[:, 1]
    verts = polygon.vertices
    inside = np.zeros(points.shape[0], dtype=bool)
    boundary = np.zeros(points.shape[0], dtype=bool)
    for start in range(verts.shape[0]):
        ax, ay = verts[start]
        bx, by = verts[(start + 1) % verts.shape[0]]
        cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
        within_box = (
            (px >= min(ax, bx)) & (px <= max(ax, bx))
            & (py >= min(ay, by)) & (py <= max(ay, by))
        )
        boundary |= (cross == 0.0) & within_box
        straddles = (ay > py) != (by > py)
        with np.errstate(divide="ignore", invalid="ignore"):
            x_at = ax + (py - ay) * (bx - ax) / (by - ay)
        inside ^= straddles & (px < x_at)
    return inside | boundary


def lasso_patch(
    base: DensityField, points: np.ndarray, polygon: LassoPolygon
) -> tuple[np.ndarray, DensityField]:
    """Density of only the lassoed points, on the base field's grid.

    The patch reuses the base grid, bounds, and bandwidth so it can be
    alpha-blended over the base field.  Its kernel sum is averaged over the
    selected points, which makes a polygon enclosing everything reproduce
    the base field exactly.

    Returns:
        (indices, patch) where indices are the selected points in
        increasing order.  An empty selection yields a zero field.
    """
    points = np.asarray(points, dtype=np.float64)
    selected = np.flatnonzero(point_in_polygon(points, polygon))
    chosen = points[selected]
    values = _kernel_grid(
        chosen, base.grid_w, base.grid_h, base.bounds, base.bandwidth, max(len(chosen), 1)
    )
    patch = DensityField(
        grid_w=base.grid_w,
        grid_h=base.grid_h,
        bounds=base.bounds,
        bandwidth=base.bandwidth,
        values=values,
    )
    return selected, patch


def lof_scores(points: np.ndarray, k: int = DEFAULT_LOF_K) -> np.ndarray:
    """Local outlier factor of every point among its k nearest neighbors.

    Follows the textbook definition: k-distance neighborhoods keep every
    point tied at the k-th distance, reachability distances floor at the
    neighbor's k-distance, and the score is the ratio of the neighbors'
    mean local reachability density to the point's own.

    Args:
        points: (R, d) point cloud with R >= k + 1.
        k: Neighborhood size.

    Raises:
        TooFewPoints: If R < k + 1.
    """
    points = np.asarray(points, dtype=np.float64)
    n = points.shape[0]
    if n < k + 1:
        raise TooFewPoints(k + 1, n)
    diff = points[:, None, :] - points[None, :, :]
    dist = np.sqrt((diff * diff).sum(axis=2))
    # row-sorted distances include self at zero, so index k is the
    # k-th nearest other point; duplicates count at distance zero
    k_dist = np.sort(dist, axis=1)[:, k]
    neighbors = dist <= k_dist[:, None]
    np.fill_diagonal(neighbors, False)
    counts = neighbors.sum(axis=1)
    reach = np.maximum(dist, k_dist[None, :])
    mean_reach = (reach * neighbors).sum(axis=1) / counts
    # floor keeps duplicate groups (zero reachability) finite, with ratio 1
    lrd = 1.0 / np.maximum(mean_reach, 1e-300)
    neighbor_lrd_mean = np.where(neighbors, lrd[None, :], 0.0).sum(axis=1) / counts
    return neighbor_lrd_mean / lrd


def outlier_indices(scores: np.ndarray, threshold: float = DEFAULT_LOF_THRESHOLD) -> np.ndarray:
    """Indices with a score strictly above the threshold, ascending."""
    return np.flatnonzero(np.asarray(scores) > threshold)
