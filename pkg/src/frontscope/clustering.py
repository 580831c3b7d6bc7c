"""Density-based clustering over solution sets.

The pipeline is the classic hierarchical density formulation: mutual
reachability distances, a minimum spanning tree, a single-linkage
dendrogram, a condensed tree pruned by minimum cluster size, and a flat
extraction that keeps the most stable clusters.  Points in no stable
cluster are labeled -1.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

_CHUNK = 256


@dataclass(frozen=True)
class HdbscanConfig:
    """Knobs for density clustering.

    ``min_cluster_size`` is the smallest point count a cluster may have;
    ``min_samples`` controls how conservative the density estimate is.
    """

    min_cluster_size: int = 10
    min_samples: int = 2

    def __post_init__(self):
        if self.min_cluster_size < 2:
            raise ValueError("min_cluster_size must be at least 2")
        if self.min_samples < 1:
            raise ValueError("min_samples must be at least 1")


def _pairwise_distances(vectors: np.ndarray) -> np.ndarray:
    n = vectors.shape[0]
    out = np.empty((n, n))
    for start in range(0, n, _CHUNK):
        block = vectors[start : start + _CHUNK]
        diff = block[:, None, :] - vectors[None, :, :]
        out[start : start + _CHUNK] = np.sqrt((diff * diff).sum(axis=2))
    return out


def _core_distances(dist: np.ndarray, min_samples: int) -> np.ndarray:
    """Distance to the min_samples-th nearest other point.

    The sorted row carries self at distance zero in front, so index
    ``min_samples`` is the wanted neighbor; duplicates count at zero.
    """
    n = dist.shape[0]
    k = min(min_samples, n - 1)
    return np.sort(dist, axis=1)[:, k]


def _mutual_reachability(dist: np.ndarray, core: np.ndarray) -> np.ndarray:
    return np.maximum(np.maximum(core[:, None], core[None, :]), dist)


def _prim_mst(weights: np.ndarray) -> np.ndarray:
    """Minimum spanning tree of a dense weight matrix, as (n-1, 3) rows.

    Ties on edge weight resolve toward the smallest vertex index, which
    keeps the tree deterministic for symmetric inputs.
    """
    n = weights.shape[0]
    in_tree = np.zeros(n, dtype=bool)
    in_tree[0] = True
    best = weights[0].copy()
    best[0] = np.inf
    parent = np.zeros(n, dtype=np.int64)
    edges = np.empty((n - 1, 3))
    for t in range(n - 1):
        candidate = np.where(in_tree, np.inf, best)
        j = int(np.argmin(candidate))
        edges[t] = (parent[j], j, candidate[j])
        in_tree[j] = True
        improved = weights[j] < best
        best[improved] = weights[j][improved]
        parent[improved] = j
    return edges


def mst_mutual_reachability(vectors: np.ndarray, min_samples: int) -> list[tuple[int, int, float]]:
    """Spanning tree edges of the mutual reachability graph.

    Returns:
        n - 1 edges as (i, j, weight) tuples in insertion order.
    """
    vectors = np.asarray(vectors, dtype=np.float64)
    dist = _pairwise_distances(vectors)
    core = _core_distances(dist, min_samples)
    edges = _prim_mst(_mutual_reachability(dist, core))
    return [(int(i), int(j), float(w)) for i, j, w in edges]


def _single_linkage(edges: np.ndarray, n: int) -> np.ndarray:
    """Builds a dendrogram from tree edges sorted by ascending weight.

    Returns:
        (n-1, 4) rows of (left node, right node, distance, size) where
        nodes 0..n-1 are points and row t creates node n + t.
    """
    order = np.lexsort((edges[:, 1], edges[:, 0], edges[:, 2]))
    parent = np.arange(2 * n - 1, dtype=np.int64)
    node_of = np.arange(n, dtype=np.int64)
    sizes = np.ones(2 * n - 1, dtype=np.int64)

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    hierarchy = np.empty((n - 1, 4))
    for t, row in enumerate(order):
        i, j, weight = edges[row]
        ra, rb = find(int(i)), find(int(j))
        na, nb = node_of[ra], node_of[rb]
        new_node = n + t
        hierarchy[t] = (min(na, nb), max(na, nb), weight, sizes[ra] + sizes[rb])
        parent[ra] = rb
        sizes[rb] = sizes[ra] + sizes[rb]
        node_of[rb] = new_node
    return hierarchy


def _bfs_nodes(hierarchy: np.ndarray, n: int, start: int) -> list[int]:
    out = []
    queue = deque([start])
    while queue:
        node = queue.popleft()
        out.append(node)
        if node >= n:
            row = hierarchy[node - n]
            queue.append(int(row[0]))
            queue.append(int(row[1]))
    return out


def _condense_tree(hierarchy: np.ndarray, n: int, min_cluster_size: int):
    """Collapses the dendrogram into clusters of at least the minimum size.

    Returns:
        Parallel lists (parents, children, lambdas, sizes) where children
        below n are points and the root cluster has id n.  Lambda is the
        reciprocal of merge distance, infinite for zero distance.
    """
    root = 2 * n - 2
    relabel = {root: n}
    next_label = n + 1
    parents: list[int] = []
    children: list[int] = []
    lambdas: list[float] = []
    sizes: list[int] = []
    ignore = set()

    def node_size(node: int) -> int:
        return 1 if node < n else int(hierarchy[node - n][3])

    def shed_points(subroot: int, parent_label: int, lam: float):
        for sub in _bfs_nodes(hierarchy, n, subroot):
            if sub < n:
                parents.append(parent_label)
                children.append(sub)
                lambdas.append(lam)
                sizes.append(1)
            ignore.add(sub)

    for node in _bfs_nodes(hierarchy, n, root):
        if node < n or node in ignore:
            continue
        left, right, distance, _ = hierarchy[node - n]
        left, right = int(left), int(right)
        lam = 1.0 / distance if distance > 0.0 else np.inf
        label = relabel[node]
        left_size, right_size = node_size(left), node_size(right)
        left_big = left_size >= min_cluster_size
        right_big = right_size >= min_cluster_size
        if left_big and right_big:
            for child, size in ((left, left_size), (right, right_size)):
                relabel[child] = next_label
                parents.append(label)
                children.append(next_label)
                lambdas.append(lam)
                sizes.append(size)
                next_label += 1
        elif not left_big and not right_big:
            shed_points(left, label, lam)
            shed_points(right, label, lam)
        elif left_big:
            relabel[left] = label
            shed_points(right, label, lam)
        else:
            relabel[right] = label
            shed_points(left, label, lam)
    return parents, children, lambdas, sizes


def _stability(parents, children, lambdas, sizes, n: int) -> dict[int, float]:
    """Integral of (lambda - birth) over each cluster's member mass."""
    births = {n: 0.0}
    for child, lam in zip(children, lambdas):
        if child >= n:
            births[child] = lam
    totals = {cluster: 0.0 for cluster in births}
    for parent, lam, size in zip(parents, lambdas, sizes):
        totals[parent] += (lam - births[parent]) * size
    return totals


def _extract_labels(parents, children, lambdas, sizes, n: int) -> np.ndarray:
    if not parents:
        return np.full(n, -1, dtype=np.int64)
    stability = _stability(parents, children, lambdas, sizes, n)
    cluster_children: dict[int, list[int]] = {c: [] for c in stability}
    for parent, child in zip(parents, children):
        if child >= n:
            cluster_children[parent].append(child)

    # bottom-up excess of mass: a parent survives only if it is at least
    # as stable as its children combined; the root never competes
    selected = {c for c in stability if c != n}
    for cluster in sorted(stability, reverse=True):
        if cluster == n:
            continue
        kids = cluster_children[cluster]
        if not kids:
            continue
        child_total = sum(stability[k] for k in kids)
        if child_total > stability[cluster]:
            selected.discard(cluster)
            stability[cluster] = child_total
        else:
            stack = list(kids)
            while stack:
                below = stack.pop()
                selected.discard(below)
                stack.extend(cluster_children[below])

    label_of = {cluster: rank for rank, cluster in enumerate(sorted(selected))}
    max_id = max(stability) if stability else n
    parent_link = np.arange(max_id + 1, dtype=np.int64)

    def find(x: int) -> int:
        root = x
        while parent_link[root] != root:
            root = parent_link[root]
        while parent_link[x] != root:
            parent_link[x], x = root, parent_link[x]
        return root

    for parent, child in zip(parents, children):
        if child not in selected:
            parent_link[find(child)] = find(parent)

    labels = np.full(n, -1, dtype=np.int64)
    for point in range(n):
        root = find(point)
        if root in label_of:
            labels[point] = label_of[root]
    return labels


def hdbscan(vectors: np.ndarray, config: HdbscanConfig = HdbscanConfig()) -> np.ndarray:
    """Clusters row vectors, returning one integer label per row.

    Labels are 0..C-1 ordered by the clusters' internal ids, with -1 for
    noise.  Identical inputs always produce identical labels; a dataset
    whose hierarchy never splits into two viable clusters is all noise.
    """
    vectors = np.asarray(vectors, dtype=np.float64)
    n = vectors.shape[0]
    if n == 0:
        return np.empty(0, dtype=np.int64)
    if n == 1:
        return np.full(1, -1, dtype=np.int64)
    dist = _pairwise_distances(vectors)
    core = _core_distances(dist, config.min_samples)
    edges = _prim_mst(_mutual_reachability(dist, core))
    hierarchy = _single_linkage(edges, n)
    condensed = _condense_tree(hierarchy, n, config.min_cluster_size)
    return _extract_labels(*condensed, n)
