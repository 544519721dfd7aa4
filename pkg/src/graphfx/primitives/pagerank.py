"""PageRank: rank mass scattered from the active frontier each round,
converged vertices filtered out of the frontier."""
from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from ..frontier import VERTEX, Frontier
from ..graph import CsrGraph
from ..load_balance import LbParams, Strategy, build_plan
from ..operators import (
    AdvanceKind,
    FilterMode,
    FunctorSet,
    advance,
    atomic_add,
    filter_frontier,
)
from ..stats import RunStats


@dataclass
class PageRankResult:
    rank: np.ndarray
    stats: RunStats


def pagerank(
    g: CsrGraph,
    damping: float = 0.85,
    epsilon: float = 1e-6,
    max_iters: int = 100,
    strategy: Strategy = Strategy.AUTO,
    params: LbParams | None = None,
    num_threads: int = 1,
) -> PageRankResult:
    """Iterate rank updates until every vertex moved less than ``epsilon``
    or ``max_iters`` rounds ran.

    Starting from uniform ranks with all vertices active, each round
    scatters damping * rank/out-degree along the frontier's out-edges,
    with mass from dangling (out-degree zero) vertices spread uniformly.
    While the frontier is still full a round equals one synchronous
    power-iteration step; once vertices converge out of the frontier their
    outgoing mass freezes, trading exactness for less work.
    """
    if not 0.0 < damping < 1.0:
        raise ValueError("damping must be in (0, 1)")
    if epsilon < 0:
        raise ValueError("epsilon must be >= 0")
    n = g.num_vertices
    if n == 0:
        return PageRankResult(rank=np.empty(0), stats=RunStats("pagerank").finalize(0.0))

    outdeg = g.degrees.astype(np.float64)
    rank = np.full(n, 1.0 / n, dtype=np.float64)
    frontier = Frontier.from_items(np.arange(n, dtype=np.int64), kind=VERTEX)

    stats = RunStats("pagerank")
    t0 = time.perf_counter()
    it = 0
    while len(frontier) and it < max_iters:
        it += 1
        it0 = time.perf_counter()
        active = frontier.to_array()
        dangling_mass = rank[active[outdeg[active] == 0]].sum()
        rank_next = np.full(n, (1.0 - damping) / n + damping * dangling_mass / n)

        scatter = FunctorSet(
            apply=lambda s, d, e, _: atomic_add(
                rank_next, d, damping * rank[s] / outdeg[s]
            ),
        )
        plan = build_plan(g, frontier, strategy, params)
        stats.edges_traversed += plan.total_output
        advance(g, frontier, AdvanceKind.V2V, functors=scatter,
                plan=plan, num_threads=num_threads)

        moved = np.abs(rank_next - rank)
        frontier = filter_frontier(
            frontier, FilterMode.EXACT,
            functors=FunctorSet(vertex_cond=lambda v, _: moved[v] >= epsilon),
        )
        rank = rank_next
        stats.record_iteration(it, len(active), len(frontier), "push",
                               (time.perf_counter() - it0) * 1000.0)

    stats.finalize((time.perf_counter() - t0) * 1000.0)
    return PageRankResult(rank=rank, stats=stats)
