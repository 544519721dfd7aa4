"""Breadth-first search: level-synchronous traversal with optional
push/pull switching and an idempotent (atomic-free) advance mode."""
from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from ..direction import PULL, PUSH, DirectionState, decide_direction, estimate_mf_mu, pull_step
from ..frontier import VERTEX, Frontier, FrontierPair, generate_unvisited_frontier
from ..graph import NO_PRED, UNVISITED, CsrGraph
from ..load_balance import LbParams, Strategy, build_plan, scan_from_degrees
from ..operators import (
    AdvanceKind,
    CullingConfig,
    FilterMode,
    FunctorSet,
    advance,
    advance_filter_fused,
    compare_and_swap,
    filter_frontier,
)
from ..stats import RunStats


@dataclass
class BfsResult:
    labels: np.ndarray
    preds: np.ndarray
    stats: RunStats


def _pull_plan(g, unvisited, strategy, params):
    csc_rows, _, _ = g.csc()
    items = unvisited.to_array()
    degrees = csc_rows[items + 1] - csc_rows[items]
    scan, total = scan_from_degrees(degrees)
    return build_plan(g, unvisited, strategy, params, scan=scan, total=total)


def bfs(
    g: CsrGraph,
    source: int,
    idempotent: bool = False,
    direction: str = "push",
    strategy: Strategy = Strategy.AUTO,
    do_a: float = 0.001,
    do_b: float = 0.2,
    mu_edge_based: bool = False,
    filter_mode: FilterMode = FilterMode.EXACT,
    culling: CullingConfig | None = None,
    params: LbParams | None = None,
    num_threads: int = 1,
) -> BfsResult:
    """Hop distances (and discovering parents) from ``source``.

    ``direction`` is "push", "pull" (pull from the second level on), or
    "auto" (estimate-driven switching). Non-idempotent advance claims each
    vertex once via compare-and-swap; idempotent advance skips the claim,
    tolerates duplicate discoveries, and leaves cleanup to the filter;
    the resulting labels are identical either way.
    """
    n = g.num_vertices
    if not 0 <= source < n:
        raise ValueError(f"source {source} out of range")
    if direction not in (PUSH, PULL, "auto"):
        raise ValueError(f"unknown direction {direction!r}")

    stats = RunStats("bfs")
    pre0 = time.perf_counter()
    if direction != PUSH:
        g.csc()
    stats.preprocess_ms = (time.perf_counter() - pre0) * 1000.0

    labels = np.full(n, UNVISITED, dtype=np.int64)
    preds = np.full(n, NO_PRED, dtype=np.int64)
    labels[source] = 0

    pair = FrontierPair.create(VERTEX)
    pair.input.set_items([source])
    unvisited: Frontier | None = None
    state = DirectionState(n=n, m=g.num_edges, do_a=do_a, do_b=do_b,
                           mu_edge_based=mu_edge_based)
    if culling is None and filter_mode == FilterMode.INEXACT:
        culling = CullingConfig(domain_size=n)

    depth = 0
    t0 = time.perf_counter()
    while len(pair.input):
        depth += 1
        it0 = time.perf_counter()
        n_f = len(pair.input)
        state.n_f = n_f
        state.n_u -= n_f

        m_f, m_u = estimate_mf_mu(state)
        if direction == "auto":
            mode = decide_direction(state)
        elif direction == PULL:
            mode = PULL if depth > 1 else PUSH
        else:
            mode = PUSH
        stats.direction_trace.append(
            {"iteration": depth, "mode_before": state.mode, "n_f": n_f,
             "n_u": state.n_u, "m_f": m_f, "m_u": m_u, "decision": mode}
        )
        if mode != state.mode:
            stats.direction_switches += 1

        if mode == PUSH:
            if idempotent:
                functors = FunctorSet(
                    cond=lambda s, d, e, _: labels[d] == UNVISITED,
                    apply=_set_depth(labels, preds, depth),
                )
            else:
                functors = FunctorSet(
                    cond=lambda s, d, e, _: compare_and_swap(labels, d, UNVISITED, depth),
                    apply=lambda s, d, e, _: _store_preds(preds, d, s),
                )
            plan = build_plan(g, pair.input, strategy, params)
            stats.edges_traversed += plan.total_output
            if strategy == Strategy.LB_CULL:
                # fused traverse-and-cull: no intermediate frontier
                out = advance_filter_fused(
                    g, pair.input, AdvanceKind.V2V, functors=functors,
                    mode=filter_mode, culling=culling, idempotent=idempotent,
                    params=params, num_threads=num_threads,
                )
            else:
                out = advance(
                    g, pair.input, AdvanceKind.V2V, functors=functors,
                    idempotent=idempotent, plan=plan, num_threads=num_threads,
                )
                out = filter_frontier(out, mode=filter_mode, culling=culling)
            pair.output.set_items(out.to_array())
            pair.swap()
        else:
            if state.mode == PUSH or unvisited is None:
                unvisited = generate_unvisited_frontier(labels)
            functors = FunctorSet(
                cond=lambda s, d, e, _: labels[s] == depth - 1,
                apply=_set_depth(labels, preds, depth),
            )
            plan = _pull_plan(g, unvisited, strategy, params)
            stats.edges_traversed += plan.total_output
            new_active, unvisited = pull_step(
                g, unvisited, functors, plan=plan, num_threads=num_threads
            )
            pair.output.set_items(new_active.to_array())
            pair.swap()

        state.mode = mode
        stats.record_iteration(depth, n_f, len(pair.input), mode,
                               (time.perf_counter() - it0) * 1000.0)

    stats.finalize((time.perf_counter() - t0) * 1000.0)
    return BfsResult(labels=labels, preds=preds, stats=stats)


def _set_depth(labels, preds, depth):
    def apply(s, d, e, _):
        labels[d] = depth
        preds[d] = s
    return apply


def _store_preds(preds, d, s):
    preds[d] = s
