"""Synthetic graph generators: recursive-matrix, random geometric, Erdős–Rényi.

Every generator is a pure function of its parameters and seed.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.spatial import cKDTree

from .graph import ID_DTYPE, CooGraph

# Graph 500 initiator probabilities for the recursive-matrix generator.
RMAT_A, RMAT_B, RMAT_C, RMAT_D = 0.57, 0.19, 0.19, 0.05

# Connection radius used for the reference scale-24 geometric graph.
RGG_BASE_THRESHOLD = 0.000548
RGG_BASE_SCALE = 24


def generate_rmat(
    scale: int,
    edge_factor: int,
    a: float = RMAT_A,
    b: float = RMAT_B,
    c: float = RMAT_C,
    d: float = RMAT_D,
    seed: int = 0,
) -> CooGraph:
    """Recursive-matrix (Kronecker) edge generator.

    Produces ``edge_factor * 2**scale`` directed edges over ``2**scale``
    vertices by descending the adjacency-matrix quadrants with
    probabilities (a, b, c, d), noise-free. Duplicates are kept here and
    removed when the CSR is built.
    """
    if scale < 1:
        raise ValueError("scale must be >= 1")
    if abs(a + b + c + d - 1.0) > 1e-9:
        raise ValueError("quadrant probabilities must sum to 1")
    n = 1 << scale
    m = edge_factor * n
    rng = np.random.default_rng(seed)
    cum = np.array([a, a + b, a + b + c])
    src = np.zeros(m, dtype=ID_DTYPE)
    dst = np.zeros(m, dtype=ID_DTYPE)
    for level in range(scale):
        q = np.searchsorted(cum, rng.random(m), side="right")
        src = (src << 1) | (q >> 1)
        dst = (dst << 1) | (q & 1)
    return CooGraph(num_vertices=n, src=src, dst=dst)


def rgg_threshold_for_scale(scale: int) -> float:
    """Connection radius scaled to keep the expected degree of the
    reference scale-24 setting as the vertex count changes."""
    return RGG_BASE_THRESHOLD * math.sqrt(2.0 ** (RGG_BASE_SCALE - scale))


def generate_rgg(scale: int, threshold: float, seed: int = 0) -> CooGraph:
    """Random geometric graph on the unit square.

    ``2**scale`` points are placed uniformly; two points are joined when
    their Euclidean distance is strictly below ``threshold``. Each
    undirected pair is emitted once with ``src < dst``; symmetrize at CSR
    build time.
    """
    if not 0.0 < threshold < 1.0:
        raise ValueError("threshold must be in (0, 1)")
    n = 1 << scale
    rng = np.random.default_rng(seed)
    points = rng.random((n, 2))
    pairs = cKDTree(points).query_pairs(r=threshold, output_type="ndarray")
    if len(pairs):
        diff = points[pairs[:, 0]] - points[pairs[:, 1]]
        strict = np.einsum("ij,ij->i", diff, diff) < threshold * threshold
        pairs = pairs[strict]
    src = np.minimum(pairs[:, 0], pairs[:, 1]).astype(ID_DTYPE)
    dst = np.maximum(pairs[:, 0], pairs[:, 1]).astype(ID_DTYPE)
    order = np.lexsort((dst, src))
    return CooGraph(num_vertices=n, src=src[order], dst=dst[order])


def generate_erdos_renyi(n: int, p: float, seed: int = 0) -> CooGraph:
    """G(n, p) with each unordered pair kept independently; ``src < dst``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must be in [0, 1]")
    rng = np.random.default_rng(seed)
    u, v = np.triu_indices(n, k=1)
    keep = rng.random(len(u)) < p
    return CooGraph(
        num_vertices=n,
        src=u[keep].astype(ID_DTYPE),
        dst=v[keep].astype(ID_DTYPE),
    )
