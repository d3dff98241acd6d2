"""Shared graph builders and independent dense-math oracles.

The oracle helpers here deliberately avoid the package's sparse code paths:
they build dense matrices straight from edge lists so tests compare two
independent routes to the same quantity.
"""

from __future__ import annotations

import numpy as np

from asgc import Graph, LabeledDataset, SbmConfig, generate_sbm


def single_edge_graph() -> Graph:
    return Graph.from_edges(2, [[0, 1]])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [[i, i + 1] for i in range(n - 1)])


def triangle_graph() -> Graph:
    return Graph.from_edges(3, [[0, 1], [1, 2], [0, 2]])


def random_graph(n: int, p: float, rng: np.random.Generator, ensure_min_degree: bool = True) -> Graph:
    """Erdos-Renyi graph; optionally wires isolated nodes into a cycle edge."""
    upper = np.triu(rng.random((n, n)) < p, k=1)
    edges = list(zip(*np.nonzero(upper)))
    if ensure_min_degree:
        deg = np.zeros(n, dtype=int)
        for i, j in edges:
            deg[i] += 1
            deg[j] += 1
        for i in np.nonzero(deg == 0)[0]:
            edges.append((int(i), int((i + 1) % n)))
    return Graph.from_edges(n, edges)


def dense_adjacency(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for i in range(g.n):
        for j in g.neighbors(i):
            a[i, j] = 1.0
    return a


def dense_normalized_adjacency(g: Graph, add_self_loops: bool) -> np.ndarray:
    """Dense brute-force construction of the normalized adjacency."""
    a = dense_adjacency(g)
    if add_self_loops:
        a = a + np.eye(g.n)
    d = a.sum(axis=1)
    inv = np.zeros(g.n)
    inv[d > 0] = 1.0 / np.sqrt(d[d > 0])
    return a * inv[:, None] * inv[None, :]


def svd_least_squares(basis: np.ndarray, target: np.ndarray, rel_tol: float = 1e-10) -> np.ndarray:
    """Independent minimum-norm solve via an explicit SVD pseudoinverse."""
    u, s, vt = np.linalg.svd(basis, full_matrices=False)
    keep = s > rel_tol * s.max() if s.size and s.max() > 0 else np.zeros_like(s, dtype=bool)
    inv_s = np.zeros_like(s)
    inv_s[keep] = 1.0 / s[keep]
    return vt.T @ (inv_s * (u.T @ target))


def toy_dataset(n_per_block=60, n_features=6, log_ratio=2.0, seed=0, name="toy") -> LabeledDataset:
    """Two-block SBM with block-informative noisy features, for protocol tests."""
    g, _, block = generate_sbm(SbmConfig(n_per_block, 8.0, log_ratio, seed))
    rng = np.random.default_rng(seed + 1000)
    y = (block > 0).astype(int)
    centers = np.array([[-1.0] * n_features, [1.0] * n_features])
    x = centers[y] + rng.standard_normal((2 * n_per_block, n_features)) * 1.5
    return LabeledDataset(name, g, x, y)
