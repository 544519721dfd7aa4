"""Graph containers (CSR / COO), format conversion, and canonicalization.

All vertex and edge ids are signed 64-bit integers; -1 is reserved as a
"no predecessor" marker and the maximum representable value as the
"unvisited" distance sentinel. Edge weights are integers by default so
shortest-path results can be compared exactly; pass ``weight_dtype=float``
to loaders for real-valued weights.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

ID_DTYPE = np.int64
WEIGHT_DTYPE = np.int64

#: Distance sentinel for vertices not yet reached by a traversal.
UNVISITED = np.iinfo(ID_DTYPE).max

#: Predecessor marker for roots / unreached vertices.
NO_PRED = -1


class GraphFormatError(ValueError):
    """Raised for malformed graph input files; carries a line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass
class CooGraph:
    """Edge list in coordinate form. Endpoints must be < num_vertices."""

    num_vertices: int
    src: np.ndarray
    dst: np.ndarray
    weights: np.ndarray | None = None

    @property
    def num_edges(self) -> int:
        return int(len(self.src))

    def validate(self) -> None:
        if len(self.src) != len(self.dst):
            raise ValueError("src/dst length mismatch")
        if self.num_edges and (
            self.src.min() < 0
            or self.dst.min() < 0
            or max(self.src.max(), self.dst.max()) >= self.num_vertices
        ):
            raise ValueError("edge endpoint out of range")
        if self.weights is not None and len(self.weights) != self.num_edges:
            raise ValueError("weights length mismatch")


@dataclass
class CsrGraph:
    """Compressed sparse row adjacency.

    ``row_offsets`` has ``num_vertices + 1`` entries; the neighbors of
    vertex ``v`` are ``column_indices[row_offsets[v]:row_offsets[v + 1]]``,
    kept sorted ascending. Directed edge slot ``e`` runs from the vertex
    owning the slot to ``column_indices[e]``. An undirected graph stores
    both directions explicitly; ``undirected`` marks graphs built through
    a symmetrizing path (no self loops, no duplicates, mirrored slots).

    The reverse (incoming) adjacency is built lazily on first use and
    cached; the graph itself is immutable after construction and safe to
    share between runs.
    """

    num_vertices: int
    row_offsets: np.ndarray
    column_indices: np.ndarray
    edge_weights: np.ndarray | None = None
    undirected: bool = False
    _csc: tuple[np.ndarray, np.ndarray, np.ndarray] | None = field(
        default=None, repr=False, compare=False
    )
    _edge_sources: np.ndarray | None = field(default=None, repr=False, compare=False)

    @property
    def num_edges(self) -> int:
        return int(len(self.column_indices))

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.row_offsets)

    @property
    def average_degree(self) -> float:
        return self.num_edges / self.num_vertices if self.num_vertices else 0.0

    def degree(self, v: int) -> int:
        return int(self.row_offsets[v + 1] - self.row_offsets[v])

    def neighbors(self, v: int) -> np.ndarray:
        return self.column_indices[self.row_offsets[v] : self.row_offsets[v + 1]]

    def edge_sources(self) -> np.ndarray:
        """Per-edge-slot source vertex (the slot owner), cached."""
        if self._edge_sources is None:
            self._edge_sources = np.repeat(
                np.arange(self.num_vertices, dtype=ID_DTYPE), self.degrees
            )
        return self._edge_sources

    def csc(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Incoming adjacency ``(row_offsets, column_indices, edge_ids)``.

        ``edge_ids[p]`` maps the reverse slot back to the original edge
        slot, so per-edge data keeps working in pull traversal.
        """
        if self._csc is None:
            order = np.argsort(self.column_indices, kind="stable")
            csc_cols = self.edge_sources()[order]
            counts = np.bincount(self.column_indices, minlength=self.num_vertices)
            csc_rows = np.zeros(self.num_vertices + 1, dtype=ID_DTYPE)
            np.cumsum(counts, out=csc_rows[1:])
            self._csc = (csc_rows, csc_cols, order.astype(ID_DTYPE))
        return self._csc

    def validate(self) -> None:
        r = self.row_offsets
        if len(r) != self.num_vertices + 1 or r[0] != 0 or r[-1] != self.num_edges:
            raise ValueError("row_offsets endpoints wrong")
        if np.any(np.diff(r) < 0):
            raise ValueError("row_offsets not nondecreasing")
        if self.num_edges and (
            self.column_indices.min() < 0
            or self.column_indices.max() >= self.num_vertices
        ):
            raise ValueError("column index out of range")
        if self.edge_weights is not None and len(self.edge_weights) != self.num_edges:
            raise ValueError("edge_weights length mismatch")
        if self.undirected:
            s, d = self.edge_sources(), self.column_indices
            if np.any(s == d):
                raise ValueError("undirected graph contains self loops")
            fwd = np.sort(s * self.num_vertices + d)
            rev = np.sort(d * self.num_vertices + s)
            if not np.array_equal(fwd, rev):
                raise ValueError("undirected graph is not symmetric")

    def is_symmetric(self) -> bool:
        s, d = self.edge_sources(), self.column_indices
        key = self.num_vertices
        return bool(
            np.array_equal(np.sort(s * key + d), np.sort(d * key + s))
        )


def coo_to_csr(
    coo: CooGraph, *, make_undirected: bool = False, dedup: bool = True
) -> CsrGraph:
    """Build a canonical CSR graph: neighbor lists sorted, duplicates dropped.

    With ``make_undirected`` the edge set is symmetrized and self loops
    removed before canonicalization.
    """
    coo.validate()
    n = coo.num_vertices
    src = np.asarray(coo.src, dtype=ID_DTYPE)
    dst = np.asarray(coo.dst, dtype=ID_DTYPE)
    w = None if coo.weights is None else np.asarray(coo.weights)

    if make_undirected:
        keep = src != dst
        src, dst = src[keep], dst[keep]
        if w is not None:
            w = w[keep]
        src, dst = np.concatenate([src, dst]), np.concatenate([dst, src])
        if w is not None:
            w = np.concatenate([w, w])

    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    if w is not None:
        w = w[order]
    if dedup and len(src):
        uniq = np.empty(len(src), dtype=bool)
        uniq[0] = True
        np.not_equal(src[1:], src[:-1], out=uniq[1:])
        uniq[1:] |= dst[1:] != dst[:-1]
        src, dst = src[uniq], dst[uniq]
        if w is not None:
            w = w[uniq]

    counts = np.bincount(src, minlength=n) if len(src) else np.zeros(n, dtype=ID_DTYPE)
    row_offsets = np.zeros(n + 1, dtype=ID_DTYPE)
    np.cumsum(counts, out=row_offsets[1:])
    return CsrGraph(
        num_vertices=n,
        row_offsets=row_offsets,
        column_indices=dst,
        edge_weights=w,
        undirected=make_undirected,
    )


def csr_to_coo(g: CsrGraph) -> CooGraph:
    return CooGraph(
        num_vertices=g.num_vertices,
        src=g.edge_sources().copy(),
        dst=g.column_indices.copy(),
        weights=None if g.edge_weights is None else g.edge_weights.copy(),
    )


def csr_to_csc(g: CsrGraph) -> CsrGraph:
    """Transpose: slot (u -> v) becomes (v -> u); weights follow their edge."""
    rows, cols, eids = g.csc()
    return CsrGraph(
        num_vertices=g.num_vertices,
        row_offsets=rows.copy(),
        column_indices=cols.copy(),
        edge_weights=None if g.edge_weights is None else g.edge_weights[eids],
        undirected=g.undirected,
    )


def assign_random_weights(g: CsrGraph, lo: int, hi: int, seed: int) -> CsrGraph:
    """Attach uniform random integer weights in [lo, hi] to every edge.

    Mirrored slots (u, v) / (v, u) always receive the same weight, so
    symmetrized graphs stay consistent for shortest-path work.
    """
    if lo > hi or lo < 1:
        raise ValueError("need 1 <= lo <= hi")
    rng = np.random.default_rng(seed)
    s, d = g.edge_sources(), g.column_indices
    key = np.minimum(s, d) * g.num_vertices + np.maximum(s, d)
    uniq, inverse = np.unique(key, return_inverse=True)
    per_pair = rng.integers(lo, hi + 1, size=len(uniq), dtype=WEIGHT_DTYPE)
    return CsrGraph(
        num_vertices=g.num_vertices,
        row_offsets=g.row_offsets,
        column_indices=g.column_indices,
        edge_weights=per_pair[inverse],
        undirected=g.undirected,
    )
