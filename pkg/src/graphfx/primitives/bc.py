"""Betweenness centrality: forward level-synchronous path counting, then
dependency accumulation walking the saved level frontiers backwards."""
from __future__ import annotations

import time
from dataclasses import dataclass
from collections.abc import Iterable

import numpy as np

from ..frontier import VERTEX, Frontier
from ..graph import UNVISITED, CsrGraph
from ..load_balance import LbParams, Strategy, build_plan
from ..operators import (
    AdvanceKind,
    FilterMode,
    FunctorSet,
    advance,
    atomic_add,
    compare_and_swap,
    filter_frontier,
)
from ..stats import RunStats


@dataclass
class BcResult:
    bc_values: np.ndarray
    stats: RunStats


def bc(
    g: CsrGraph,
    sources: int | Iterable[int],
    strategy: Strategy = Strategy.AUTO,
    params: LbParams | None = None,
    num_threads: int = 1,
) -> BcResult:
    """Dependency scores accumulated over one or more source vertices.

    Per source: a forward pass claims vertices level by level while
    summing shortest-path counts (sigma) over all parent edges, saving
    each level's frontier; the backward pass then replays the levels
    deepest-first, accumulating sigma[v]/sigma[w] * (1 + delta[w]) into
    each parent v. Unweighted traversal semantics.
    """
    n = g.num_vertices
    source_list = [sources] if isinstance(sources, (int, np.integer)) else list(sources)
    for s in source_list:
        if not 0 <= s < n:
            raise ValueError(f"source {s} out of range")

    bc_values = np.zeros(n, dtype=np.float64)
    stats = RunStats("bc")
    t0 = time.perf_counter()
    for s in source_list:
        _accumulate_single_source(g, int(s), bc_values, stats, strategy, params, num_threads)
    stats.finalize((time.perf_counter() - t0) * 1000.0)
    return BcResult(bc_values=bc_values, stats=stats)


def _accumulate_single_source(g, source, bc_values, stats, strategy, params, num_threads):
    n = g.num_vertices
    labels = np.full(n, UNVISITED, dtype=np.int64)
    sigma = np.zeros(n, dtype=np.float64)
    labels[source] = 0
    sigma[source] = 1.0

    frontier = Frontier.from_items([source], kind=VERTEX)
    level_frontiers = [frontier.to_array()]
    depth = 0
    iteration = stats.iterations
    while len(frontier):
        depth += 1
        iteration += 1
        it0 = time.perf_counter()
        plan = build_plan(g, frontier, strategy, params)
        stats.edges_traversed += plan.total_output

        claim = FunctorSet(
            cond=lambda s, d, e, _: compare_and_swap(labels, d, UNVISITED, depth)
        )
        nxt = advance(g, frontier, AdvanceKind.V2V, functors=claim,
                      plan=plan, num_threads=num_threads)
        # Path counts flow over every edge that lands on the new level,
        # not only the claiming edges.
        count_paths = FunctorSet(
            cond=lambda s, d, e, _: labels[d] == depth,
            apply=lambda s, d, e, _: atomic_add(sigma, d, sigma[s]),
        )
        advance(g, frontier, AdvanceKind.V2V, functors=count_paths,
                plan=plan, num_threads=num_threads)

        nxt = filter_frontier(nxt, mode=FilterMode.EXACT)
        stats.record_iteration(iteration, len(frontier), len(nxt), "push",
                               (time.perf_counter() - it0) * 1000.0)
        frontier = nxt
        if len(frontier):
            level_frontiers.append(frontier.to_array())

    delta = np.zeros(n, dtype=np.float64)
    for d_level in range(len(level_frontiers) - 2, -1, -1):
        level = Frontier.from_items(level_frontiers[d_level], kind=VERTEX)
        accumulate = FunctorSet(
            cond=lambda s, d, e, _: labels[d] == d_level + 1,
            apply=lambda s, d, e, _: atomic_add(
                delta, s, sigma[s] / sigma[d] * (1.0 + delta[d])
            ),
        )
        plan = build_plan(g, level, strategy, params)
        advance(g, level, AdvanceKind.V2V, functors=accumulate,
                plan=plan, num_threads=num_threads)

    delta[source] = 0.0
    bc_values += delta
    stats.iterations = iteration
