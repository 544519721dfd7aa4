"""The four bulk-synchronous frontier operators.

``advance`` expands a frontier through neighbor lists, ``filter_frontier``
compacts one, ``segmented_intersect`` intersects neighbor-list pairs, and
``compute`` maps a callback over frontier items. All of them take batched
callbacks: a functor receives whole id arrays, not single ids, and any
mutation of problem data must go through the atomic helpers below (plain
array writes are allowed only for idempotent computations).

Execution model: an operator call gathers the expansion triples in slot
order, evaluates the ``cond`` functor chunk by chunk following the load
balance plan, and commits ``apply`` effects once, at the end of the call,
over the surviving triples in slot order. Effects therefore become visible
at the bulk-synchronous boundary, and results do not depend on how the
work was partitioned.
"""
from __future__ import annotations

from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .frontier import EDGE, VERTEX, Frontier
from .graph import ID_DTYPE, CsrGraph
from .load_balance import (
    LbParams,
    LoadBalancePlan,
    Strategy,
    build_plan,
    scan_from_degrees,
)

# Gathers are split across this many slots per task when a thread pool is
# in use; below the threshold the pool overhead outweighs the copy.
_PARALLEL_GATHER_MIN = 1 << 16

_POOLS: dict[int, ThreadPoolExecutor] = {}


def _pool(num_threads: int) -> ThreadPoolExecutor:
    if num_threads not in _POOLS:
        _POOLS[num_threads] = ThreadPoolExecutor(max_workers=num_threads)
    return _POOLS[num_threads]


class AdvanceKind(Enum):
    V2V = ("vertex", "vertex")
    V2E = ("vertex", "edge")
    E2V = ("edge", "vertex")
    E2E = ("edge", "edge")

    @property
    def input_kind(self) -> str:
        return self.value[0]

    @property
    def output_kind(self) -> str:
        return self.value[1]


class FilterMode(Enum):
    EXACT = "exact"
    INEXACT = "inexact"


@dataclass
class CullingConfig:
    """Heuristic knobs for inexact filtering.

    The bitmask spans the whole id domain and drops re-occurrences after
    the first batch that saw an id. The history tables are direct-mapped
    (slot = id modulo table size, overwrite on collision): the team table
    is shared by one chunk's worth of items, the local table by small
    sub-batches. None of them guarantees full deduplication.
    """

    use_bitmask: bool = True
    team_table_size: int = 256
    local_table_size: int = 64
    bitmask_batch: int = 1024
    local_batch: int = 32
    domain_size: int | None = None


@dataclass
class FunctorSet:
    """User callbacks fused into operator execution.

    ``cond(src, dst, edge, data) -> bool mask`` decides which expansion
    triples survive; ``apply(src, dst, edge, data)`` runs once over the
    survivors; ``vertex_cond(items, data) -> bool mask`` is the filter
    predicate. Any of them may be None (always-true / no-op).
    """

    cond: Callable | None = None
    apply: Callable | None = None
    vertex_cond: Callable | None = None


# ---------------------------------------------------------------------------
# Atomic-style helpers: the only sanctioned way for functors to mutate
# problem data outside idempotent mode. Semantics are batched: the array
# state observed is the state at helper-call time, updates land before the
# helper returns.
# ---------------------------------------------------------------------------


def atomic_min(array: np.ndarray, idx: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Scatter-min ``values`` into ``array`` at ``idx``.

    Returns the mask of entries that strictly improved on the pre-call
    value *and* match the post-call minimum, i.e. the winners a sequential
    min-update race would report for its final values.
    """
    improving = values < array[idx]
    cand = np.flatnonzero(improving)
    if len(cand):
        # only improving entries can move the minimum
        np.minimum.at(array, idx[cand], values[cand])
        improving[cand] = values[cand] == array[idx[cand]]
    return improving


def atomic_add(array: np.ndarray, idx: np.ndarray, values) -> None:
    np.add.at(array, idx, values)


def compare_and_swap(array, idx, expected, value) -> np.ndarray:
    """First-claim-wins conditional store; duplicates of an index in one
    batch lose to the earliest occurrence. Returns the winner mask.

    Duplicates of an index always agree on eligibility (the comparison
    reads the pre-call state), so only eligible entries need the
    first-occurrence sort.
    """
    won = np.zeros(len(idx), dtype=bool)
    eligible = np.flatnonzero(array[idx] == expected)
    if len(eligible):
        sub = idx[eligible]
        order = np.argsort(sub, kind="stable")
        sorted_idx = sub[order]
        first = np.empty(len(sub), dtype=bool)
        first[0] = True
        np.not_equal(sorted_idx[1:], sorted_idx[:-1], out=first[1:])
        won[eligible[order[first]]] = True
        if np.ndim(value):
            array[idx[won]] = value[won]
        else:
            array[idx[won]] = value
    return won


# ---------------------------------------------------------------------------
# Gather + chunked execution internals
# ---------------------------------------------------------------------------


def _gather(row_offsets, column_indices, expand_verts, scan, num_threads=1,
            need_rep=False):
    """Materialize (src, dst, edge) triples for every expansion slot.

    The edge id of slot k belonging to item i is
    ``row_offsets[item] + (k - scan[i])``; both per-item terms are folded
    into one repeated delta so the hot loop is a single add plus the
    column gather. Pure reads of immutable topology; safe to split across
    a thread pool. ``rep`` (slot -> input position) is only materialized
    when asked for.
    """
    total = int(scan[-1])
    counts = np.diff(scan)
    src = np.repeat(expand_verts, counts)
    delta = np.repeat(row_offsets[expand_verts] - scan[:-1], counts)

    def fill(lo, hi, out_edge, out_dst):
        out_edge[lo:hi] = np.arange(lo, hi, dtype=ID_DTYPE)
        out_edge[lo:hi] += delta[lo:hi]
        out_dst[lo:hi] = column_indices[out_edge[lo:hi]]

    edge = np.empty(total, dtype=ID_DTYPE)
    dst = np.empty(total, dtype=ID_DTYPE)
    if num_threads > 1 and total >= _PARALLEL_GATHER_MIN:
        step = -(-total // num_threads)
        list(
            _pool(num_threads).map(
                lambda lo: fill(lo, min(lo + step, total), edge, dst),
                range(0, total, step),
            )
        )
    else:
        fill(0, total, edge, dst)
    rep = None
    if need_rep:
        rep = np.repeat(np.arange(len(expand_verts), dtype=ID_DTYPE), counts)
    return src, dst, edge, rep


def _run_cond(plan, functors, src, dst, edge, data):
    total = len(src)
    if functors is None or functors.cond is None:
        return np.ones(total, dtype=bool)
    valid = np.zeros(total, dtype=bool)
    for ch in plan.chunks:
        sl = slice(ch.slot_begin, ch.slot_end)
        if sl.start == sl.stop:
            continue
        valid[sl] = functors.cond(src[sl], dst[sl], edge[sl], data)
    return valid


def _commit_apply(functors, src, dst, edge, sel, data):
    if functors is not None and functors.apply is not None and len(sel):
        functors.apply(src[sel], dst[sel], edge[sel], data)


def advance(
    g: CsrGraph,
    frontier: Frontier,
    kind: AdvanceKind = AdvanceKind.V2V,
    direction: str = "push",
    strategy: Strategy = Strategy.AUTO,
    functors: FunctorSet | None = None,
    data=None,
    idempotent: bool = False,
    plan: LoadBalancePlan | None = None,
    params: LbParams | None = None,
    num_threads: int = 1,
) -> Frontier:
    """Expand ``frontier`` through neighbor lists into a new frontier.

    Push direction visits the out-neighbors of every input item and emits
    the cond-true images (destination vertices or edge slots, by ``kind``).
    Pull direction treats the input as an *unvisited* vertex frontier and
    emits the members with at least one cond-true in-neighbor. ``apply``
    runs exactly once per cond-true triple; in idempotent mode callers
    accept that duplicate items in the input produce repeated triples.
    """
    if frontier.kind != kind.input_kind:
        raise ValueError(
            f"{kind.name} advance needs a {kind.input_kind} frontier, "
            f"got {frontier.kind}"
        )
    if direction == "pull":
        if kind.input_kind != VERTEX or kind.output_kind != VERTEX:
            raise ValueError("pull advance is defined on vertex frontiers")
        active, _ = pull_expand(
            g, frontier, functors, data,
            strategy=strategy, plan=plan, params=params, num_threads=num_threads,
        )
        return active
    if direction != "push":
        raise ValueError(f"unknown direction {direction!r}")

    if plan is None:
        plan = build_plan(g, frontier, strategy, params)
    ev = frontier.to_array() if kind.input_kind == VERTEX else g.column_indices[frontier.to_array()]
    src, dst, edge, _ = _gather(
        g.row_offsets, g.column_indices, ev, plan.scan_offsets, num_threads
    )
    valid = _run_cond(plan, functors, src, dst, edge, data)
    sel = np.flatnonzero(valid)
    _commit_apply(functors, src, dst, edge, sel, data)
    out = dst[sel] if kind.output_kind == VERTEX else edge[sel]
    return Frontier.from_items(out, kind=kind.output_kind)


def pull_expand(
    g: CsrGraph,
    unvisited: Frontier,
    functors: FunctorSet | None,
    data=None,
    strategy: Strategy = Strategy.AUTO,
    plan: LoadBalancePlan | None = None,
    params: LbParams | None = None,
    num_threads: int = 1,
) -> tuple[Frontier, Frontier]:
    """Probe the in-neighbors of every unvisited vertex.

    Returns ``(new_active, new_unvisited)``: the input split into the
    vertices with at least one cond-true incoming triple and the rest.
    ``apply`` commits once over all cond-true triples. Builds the reverse
    adjacency on first use.
    """
    csc_rows, csc_cols, csc_eids = g.csc()
    items = unvisited.to_array()
    if plan is None:
        degrees = csc_rows[items + 1] - csc_rows[items]
        scan, total = scan_from_degrees(degrees)
        plan = build_plan(g, unvisited, strategy, params, scan=scan, total=total)
    # dst is the unvisited vertex being probed, src its in-neighbor, and
    # edge the original (src -> dst) slot id recovered through the
    # reverse-slot mapping.
    dst, src, rev_slot, rep = _gather(
        csc_rows, csc_cols, items, plan.scan_offsets, num_threads, need_rep=True
    )
    edge = csc_eids[rev_slot]
    valid = _run_cond(plan, functors, src, dst, edge, data)
    sel = np.flatnonzero(valid)
    _commit_apply(functors, src, dst, edge, sel, data)
    hits = np.zeros(len(items), dtype=bool)
    hits[rep[sel]] = True
    return (
        Frontier.from_items(items[hits], kind=VERTEX),
        Frontier.from_items(items[~hits], kind=VERTEX),
    )


# ---------------------------------------------------------------------------
# Filter
# ---------------------------------------------------------------------------


def _cull_bitmask(items, seen, batch):
    keep = np.ones(len(items), dtype=bool)
    for lo in range(0, len(items), batch):
        hi = min(lo + batch, len(items))
        chunk = items[lo:hi]
        keep[lo:hi] = ~seen[chunk]
        seen[chunk] = True
    return keep


def _cull_history(items, table_size, batch):
    """Direct-mapped history table emulation: inside each batch an item is
    culled when the previous item hashing to its slot carried the same id."""
    keep = np.ones(len(items), dtype=bool)
    for lo in range(0, len(items), batch):
        hi = min(lo + batch, len(items))
        chunk = items[lo:hi]
        slots = chunk % table_size
        order = np.argsort(slots, kind="stable")
        s_sorted = slots[order]
        i_sorted = chunk[order]
        dup = np.zeros(len(chunk), dtype=bool)
        same_slot = s_sorted[1:] == s_sorted[:-1]
        dup[1:] = same_slot & (i_sorted[1:] == i_sorted[:-1])
        keep_sorted = ~dup
        keep[lo:hi][order] = keep_sorted
    return keep


def _apply_culling(items, config: CullingConfig):
    if len(items) == 0:
        return items
    keep = np.ones(len(items), dtype=bool)
    if config.use_bitmask:
        domain = config.domain_size or int(items.max()) + 1
        seen = np.zeros(domain, dtype=bool)
        keep &= _cull_bitmask(items, seen, config.bitmask_batch)
    items = items[keep]
    if config.team_table_size:
        items = items[_cull_history(items, config.team_table_size, config.team_table_size)]
    if config.local_table_size:
        items = items[_cull_history(items, config.local_table_size, config.local_batch)]
    return items


def filter_frontier(
    frontier: Frontier,
    mode: FilterMode = FilterMode.EXACT,
    functors: FunctorSet | None = None,
    data=None,
    culling: CullingConfig | None = None,
) -> Frontier:
    """Compact a frontier by the ``vertex_cond`` predicate.

    Exact mode returns each surviving item once (scan-and-scatter style
    dedup). Inexact mode only runs the cheap culling heuristics: every
    distinct survivor appears at least once, no failed item appears, and
    leftover duplicates are allowed.
    """
    items = frontier.to_array()
    if functors is not None and functors.vertex_cond is not None and len(items):
        mask = functors.vertex_cond(items, data)
        items = items[mask]
    if mode == FilterMode.EXACT:
        items = np.unique(items)
    elif mode == FilterMode.INEXACT:
        items = _apply_culling(items, culling or CullingConfig())
    else:
        raise ValueError(f"unknown filter mode {mode!r}")
    return Frontier.from_items(items, kind=frontier.kind)


# ---------------------------------------------------------------------------
# Fused advance + filter
# ---------------------------------------------------------------------------


def advance_filter_fused(
    g: CsrGraph,
    frontier: Frontier,
    kind: AdvanceKind = AdvanceKind.V2V,
    functors: FunctorSet | None = None,
    data=None,
    mode: FilterMode = FilterMode.EXACT,
    culling: CullingConfig | None = None,
    idempotent: bool = False,
    params: LbParams | None = None,
    num_threads: int = 1,
) -> Frontier:
    """Traverse and cull in one pass without materializing the middle
    frontier; equivalent, as a set of items and applied effects, to
    ``filter_frontier(advance(...))``.

    Survivors are appended chunk by chunk behind a shared cursor, so the
    output order follows chunk order rather than slot order. The filter
    predicate must not depend on this call's ``apply`` effects.
    """
    if frontier.kind != kind.input_kind:
        raise ValueError("frontier kind does not match advance kind")
    plan = build_plan(g, frontier, Strategy.LB_CULL, params)
    ev = frontier.to_array() if kind.input_kind == VERTEX else g.column_indices[frontier.to_array()]
    src, dst, edge, _ = _gather(
        g.row_offsets, g.column_indices, ev, plan.scan_offsets, num_threads
    )
    out_source = dst if kind.output_kind == VERTEX else edge

    domain = g.num_vertices if kind.output_kind == VERTEX else g.num_edges
    cfg = culling or CullingConfig()
    seen = np.zeros(domain, dtype=bool)
    valid = np.zeros(len(src), dtype=bool)
    pieces = []
    for ch in plan.chunks:
        sl = slice(ch.slot_begin, ch.slot_end)
        if sl.start == sl.stop:
            continue
        if functors is not None and functors.cond is not None:
            mask = np.asarray(functors.cond(src[sl], dst[sl], edge[sl], data), dtype=bool)
        else:
            mask = np.ones(sl.stop - sl.start, dtype=bool)
        valid[sl] = mask
        out = out_source[sl][mask]
        if functors is not None and functors.vertex_cond is not None and len(out):
            out = out[np.asarray(functors.vertex_cond(out, data), dtype=bool)]
        if len(out) == 0:
            continue
        if mode == FilterMode.EXACT:
            out = np.unique(out)
            fresh = ~seen[out]
            seen[out] = True
            out = out[fresh]
        else:
            if cfg.use_bitmask:
                out = out[_cull_bitmask(out, seen, cfg.bitmask_batch)]
            if cfg.team_table_size:
                out = out[_cull_history(out, cfg.team_table_size, cfg.team_table_size)]
            if cfg.local_table_size:
                out = out[_cull_history(out, cfg.local_table_size, cfg.local_batch)]
        pieces.append(out)
    sel = np.flatnonzero(valid)
    _commit_apply(functors, src, dst, edge, sel, data)
    out_items = np.concatenate(pieces) if pieces else np.empty(0, dtype=ID_DTYPE)
    return Frontier.from_items(out_items, kind=kind.output_kind)


# ---------------------------------------------------------------------------
# Segmented intersection
# ---------------------------------------------------------------------------


@dataclass
class IntersectResult:
    intersections: Frontier
    per_pair_counts: np.ndarray
    total: int


def _resolve_pairs(g: CsrGraph, pairs) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(pairs, Frontier):
        if pairs.kind != EDGE:
            raise ValueError("a single frontier argument must be an edge frontier")
        e = pairs.to_array()
        return g.edge_sources()[e], g.column_indices[e]
    a, b = pairs
    ua = a.to_array() if isinstance(a, Frontier) else np.asarray(a, dtype=ID_DTYPE)
    ub = b.to_array() if isinstance(b, Frontier) else np.asarray(b, dtype=ID_DTYPE)
    if len(ua) != len(ub):
        raise ValueError("paired frontiers must have equal length")
    return ua, ub


def segmented_intersect(
    g: CsrGraph, pairs, small_cut: int = 64, check_sorted: bool = False
) -> IntersectResult:
    """Per-pair neighbor-list intersection.

    ``pairs`` is an edge frontier (each edge contributes its endpoints) or
    two aligned vertex frontiers / arrays. Pairs whose lists both fall
    under ``small_cut`` take a linear merge; otherwise every element of
    the smaller list is binary-searched in the larger. Output segments
    follow pair order.
    """
    u, v = _resolve_pairs(g, pairs)
    rows, cols = g.row_offsets, g.column_indices
    if check_sorted and len(u):
        for w in np.unique(np.concatenate([u, v])):
            lst = cols[rows[w] : rows[w + 1]]
            if np.any(np.diff(lst) < 0):
                raise ValueError(f"neighbor list of {w} is not sorted")
    counts = np.zeros(len(u), dtype=ID_DTYPE)
    segments = []
    for i in range(len(u)):
        a = cols[rows[u[i]] : rows[u[i] + 1]]
        b = cols[rows[v[i]] : rows[v[i] + 1]]
        if len(a) == 0 or len(b) == 0:
            continue
        if len(a) < small_cut and len(b) < small_cut:
            hit = np.intersect1d(a, b, assume_unique=True)
        else:
            small, large = (a, b) if len(a) <= len(b) else (b, a)
            pos = np.searchsorted(large, small)
            pos[pos == len(large)] = len(large) - 1
            hit = small[large[pos] == small]
        if len(hit):
            counts[i] = len(hit)
            segments.append(hit)
    flat = np.concatenate(segments) if segments else np.empty(0, dtype=ID_DTYPE)
    return IntersectResult(
        intersections=Frontier.from_items(flat, kind=VERTEX),
        per_pair_counts=counts,
        total=int(counts.sum()),
    )


def compute(frontier: Frontier, apply, data=None) -> None:
    """Run ``apply(items, data)`` once over the frontier's items,
    multiplicity included."""
    items = frontier.to_array()
    if len(items):
        apply(items, data)
