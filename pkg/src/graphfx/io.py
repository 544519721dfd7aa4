"""Graph file ingestion: Matrix Market, whitespace edge lists, binary CSR cache."""
from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .graph import (
    ID_DTYPE,
    WEIGHT_DTYPE,
    CooGraph,
    CsrGraph,
    GraphFormatError,
    coo_to_csr,
)

_CACHE_MAGIC = b"GFXCSR\x00"
_CACHE_VERSION = 1


def load_matrix_market(
    path: str | Path, make_undirected: bool = False, weight_dtype=WEIGHT_DTYPE
) -> CsrGraph:
    """Load a Matrix Market coordinate file or a plain whitespace edge list.

    Matrix Market entries are 1-indexed and carry an explicit vertex count;
    a ``symmetric`` header mirrors every entry. Plain edge lists are
    0-indexed ``src dst [weight]`` lines with the vertex count inferred.
    Malformed lines raise :class:`GraphFormatError` with the line number.
    """
    path = Path(path)
    lines = path.read_text().splitlines()

    is_mm = bool(lines) and lines[0].startswith("%%MatrixMarket")
    mm_symmetric = False
    mm_pattern = False
    if is_mm:
        header = lines[0].lower().split()
        if "coordinate" not in header:
            raise GraphFormatError("only coordinate Matrix Market files supported", 1)
        mm_symmetric = "symmetric" in header
        mm_pattern = "pattern" in header

    n_declared = None
    nnz_declared = None
    src, dst, wgt = [], [], []
    saw_sizes = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("%") or line.startswith("#"):
            continue
        parts = line.split()
        if is_mm and not saw_sizes:
            if len(parts) != 3:
                raise GraphFormatError("size line must be 'rows cols nnz'", lineno)
            try:
                rows, cols, nnz = (int(p) for p in parts)
            except ValueError:
                raise GraphFormatError("size line not integral", lineno) from None
            n_declared = max(rows, cols)
            nnz_declared = nnz
            saw_sizes = True
            continue
        if len(parts) < 2:
            raise GraphFormatError("expected 'src dst [weight]'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError("non-integer vertex id", lineno) from None
        if is_mm:
            u -= 1
            v -= 1
        if u < 0 or v < 0:
            raise GraphFormatError("negative vertex id", lineno)
        if n_declared is not None and (u >= n_declared or v >= n_declared):
            raise GraphFormatError("vertex id exceeds declared size", lineno)
        src.append(u)
        dst.append(v)
        if len(parts) > 2 and not mm_pattern:
            try:
                wgt.append(float(parts[2]))
            except ValueError:
                raise GraphFormatError("non-numeric weight", lineno) from None

    if is_mm and not saw_sizes:
        raise GraphFormatError("missing Matrix Market size line")
    if nnz_declared is not None and len(src) != nnz_declared:
        raise GraphFormatError(
            f"entry count {len(src)} does not match declared nnz {nnz_declared}"
        )

    src_a = np.asarray(src, dtype=ID_DTYPE)
    dst_a = np.asarray(dst, dtype=ID_DTYPE)
    weights = None
    if wgt:
        if len(wgt) != len(src):
            raise GraphFormatError("weights present on only some lines")
        weights = np.asarray(wgt)
        if np.any(weights < 0):
            raise GraphFormatError("negative edge weight")
        weights = weights.astype(weight_dtype)
    if n_declared is None:
        n_declared = int(max(src_a.max(), dst_a.max())) + 1 if len(src_a) else 0

    if mm_symmetric and not make_undirected:
        # Symmetric files store one triangle; mirror it (dropping explicit
        # self-loop duplication) so the adjacency is complete.
        keep = src_a != dst_a
        src_a, dst_a = (
            np.concatenate([src_a, dst_a[keep]]),
            np.concatenate([dst_a, src_a[keep]]),
        )
        if weights is not None:
            weights = np.concatenate([weights, weights[keep]])

    coo = CooGraph(num_vertices=n_declared, src=src_a, dst=dst_a, weights=weights)
    return coo_to_csr(coo, make_undirected=make_undirected)


def save_csr_cache(g: CsrGraph, path: str | Path) -> None:
    """Write the binary CSR cache: magic, version, n, m, flags, then arrays."""
    path = Path(path)
    flags = (1 if g.edge_weights is not None else 0) | (2 if g.undirected else 0)
    with open(path, "wb") as fh:
        fh.write(_CACHE_MAGIC)
        fh.write(struct.pack("<BQQB", _CACHE_VERSION, g.num_vertices, g.num_edges, flags))
        fh.write(g.row_offsets.astype("<i8").tobytes())
        fh.write(g.column_indices.astype("<i8").tobytes())
        if g.edge_weights is not None:
            fh.write(g.edge_weights.astype("<i8").tobytes())


def load_csr_cache(path: str | Path) -> CsrGraph:
    path = Path(path)
    blob = path.read_bytes()
    if not blob.startswith(_CACHE_MAGIC):
        raise GraphFormatError("not a CSR cache file (bad magic)")
    off = len(_CACHE_MAGIC)
    version, n, m, flags = struct.unpack_from("<BQQB", blob, off)
    if version != _CACHE_VERSION:
        raise GraphFormatError(f"unsupported cache version {version}")
    off += struct.calcsize("<BQQB")
    row = np.frombuffer(blob, dtype="<i8", count=n + 1, offset=off).astype(ID_DTYPE)
    off += (n + 1) * 8
    col = np.frombuffer(blob, dtype="<i8", count=m, offset=off).astype(ID_DTYPE)
    off += m * 8
    weights = None
    if flags & 1:
        weights = np.frombuffer(blob, dtype="<i8", count=m, offset=off).astype(
            WEIGHT_DTYPE
        )
    return CsrGraph(
        num_vertices=int(n),
        row_offsets=row,
        column_indices=col,
        edge_weights=weights,
        undirected=bool(flags & 2),
    )


def load_graph(path: str | Path, make_undirected: bool = False) -> CsrGraph:
    """Dispatch on file content: CSR cache, Matrix Market, or edge list."""
    path = Path(path)
    with open(path, "rb") as fh:
        head = fh.read(len(_CACHE_MAGIC))
    if head == _CACHE_MAGIC:
        g = load_csr_cache(path)
        if make_undirected and not g.undirected:
            from .graph import csr_to_coo

            g = coo_to_csr(csr_to_coo(g), make_undirected=True)
        return g
    return load_matrix_market(path, make_undirected=make_undirected)
