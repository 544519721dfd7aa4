"""Independent reference implementations used to check primitive results.

Everything here is deliberately written against plain adjacency walks
(deques, heaps, union-find, dense linear algebra) and never touches the
operator machinery it is used to verify.
"""
from __future__ import annotations

import heapq
from collections import deque

import numpy as np

from graphfx import UNVISITED, CsrGraph


def serial_bfs(g: CsrGraph, source: int) -> np.ndarray:
    labels = np.full(g.num_vertices, UNVISITED, dtype=np.int64)
    labels[source] = 0
    q = deque([source])
    rows, cols = g.row_offsets, g.column_indices
    while q:
        v = q.popleft()
        for w in cols[rows[v] : rows[v + 1]]:
            if labels[w] == UNVISITED:
                labels[w] = labels[v] + 1
                q.append(int(w))
    return labels


def dijkstra(g: CsrGraph, source: int) -> np.ndarray:
    labels = np.full(g.num_vertices, UNVISITED, dtype=np.int64)
    labels[source] = 0
    rows, cols, w = g.row_offsets, g.column_indices, g.edge_weights
    heap = [(0, source)]
    done = np.zeros(g.num_vertices, dtype=bool)
    while heap:
        d, v = heapq.heappop(heap)
        if done[v]:
            continue
        done[v] = True
        for e in range(rows[v], rows[v + 1]):
            u = cols[e]
            nd = d + int(w[e])
            if nd < labels[u]:
                labels[u] = nd
                heapq.heappush(heap, (nd, int(u)))
    return labels


def brandes_dependencies(g: CsrGraph, source: int) -> np.ndarray:
    """Single-source dependency scores of the classic sequential
    betweenness algorithm (unweighted)."""
    n = g.num_vertices
    rows, cols = g.row_offsets, g.column_indices
    sigma = np.zeros(n)
    dist = np.full(n, -1, dtype=np.int64)
    preds: list[list[int]] = [[] for _ in range(n)]
    sigma[source] = 1.0
    dist[source] = 0
    order = []
    q = deque([source])
    while q:
        v = q.popleft()
        order.append(v)
        for w in cols[rows[v] : rows[v + 1]]:
            w = int(w)
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                q.append(w)
            if dist[w] == dist[v] + 1:
                sigma[w] += sigma[v]
                preds[w].append(v)
    delta = np.zeros(n)
    for w in reversed(order):
        for v in preds[w]:
            delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
    delta[source] = 0.0
    return delta


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def union_find_components(g: CsrGraph) -> np.ndarray:
    uf = _UnionFind(g.num_vertices)
    s, d = g.edge_sources(), g.column_indices
    for i in range(g.num_edges):
        uf.union(int(s[i]), int(d[i]))
    return np.array([uf.find(v) for v in range(g.num_vertices)], dtype=np.int64)


def same_partition(a: np.ndarray, b: np.ndarray) -> bool:
    """True when two component labelings induce the same partition."""
    if len(a) != len(b):
        return False
    fwd: dict[int, int] = {}
    bwd: dict[int, int] = {}
    for x, y in zip(a.tolist(), b.tolist()):
        if fwd.setdefault(x, y) != y or bwd.setdefault(y, x) != x:
            return False
    return True


def power_iteration(g: CsrGraph, damping: float, iters: int) -> np.ndarray:
    """Synchronous PageRank steps via a dense transition matrix; dangling
    mass spread uniformly. Falls back to a sparse matvec beyond the size
    where a dense matrix is reasonable."""
    n = g.num_vertices
    outdeg = g.degrees.astype(np.float64)
    rank = np.full(n, 1.0 / n)
    if n <= 1024:
        m = np.zeros((n, n))
        s, d = g.edge_sources(), g.column_indices
        for i in range(g.num_edges):
            m[d[i], s[i]] += 1.0 / outdeg[s[i]]
        for _ in range(iters):
            dangling = rank[outdeg == 0].sum()
            rank = (1.0 - damping) / n + damping * (m @ rank + dangling / n)
        return rank
    from scipy.sparse import csr_matrix

    s, d = g.edge_sources(), g.column_indices
    vals = 1.0 / outdeg[s]
    m = csr_matrix((vals, (d, s)), shape=(n, n))
    for _ in range(iters):
        dangling = rank[outdeg == 0].sum()
        rank = (1.0 - damping) / n + damping * (m @ rank + dangling / n)
    return rank


def brute_force_triangles(g: CsrGraph) -> int:
    """Sum of common-neighbor counts over undirected edges, divided by 3."""
    adj = [set(g.neighbors(v).tolist()) for v in range(g.num_vertices)]
    s, d = g.edge_sources(), g.column_indices
    acc = 0
    for i in range(g.num_edges):
        u, v = int(s[i]), int(d[i])
        if u < v:
            acc += len(adj[u] & adj[v])
    return acc // 3


def nested_loop_pairs(scan: np.ndarray) -> np.ndarray:
    """Every (input item, output slot) pair of an expansion, by definition."""
    pairs = [
        (i, s)
        for i in range(len(scan) - 1)
        for s in range(int(scan[i]), int(scan[i + 1]))
    ]
    return np.array(pairs, dtype=np.int64).reshape(-1, 2)


def valid_bfs_preds(g: CsrGraph, labels: np.ndarray, preds: np.ndarray, source: int) -> bool:
    """preds[v] must be an in-neighbor of v one level closer to the source."""
    rows, cols = g.row_offsets, g.column_indices
    for v in range(g.num_vertices):
        if v == source or labels[v] == UNVISITED:
            if preds[v] != -1:
                return False
            continue
        p = preds[v]
        if p < 0 or labels[p] != labels[v] - 1:
            return False
        if v not in cols[rows[p] : rows[p + 1]]:
            return False
    return True


def valid_sssp_preds(g: CsrGraph, labels, preds, source) -> bool:
    rows, cols, w = g.row_offsets, g.column_indices, g.edge_weights
    for v in range(g.num_vertices):
        if v == source or labels[v] == UNVISITED:
            if preds[v] != -1:
                return False
            continue
        p = preds[v]
        if p < 0:
            return False
        found = False
        for e in range(rows[p], rows[p + 1]):
            if cols[e] == v and labels[p] + w[e] == labels[v]:
                found = True
                break
        if not found:
            return False
    return True
