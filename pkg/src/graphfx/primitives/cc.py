"""Connected components via alternating-direction hooking over an edge
frontier plus pointer jumping to flatten the component trees."""
from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from ..frontier import EDGE, VERTEX, Frontier
from ..graph import CsrGraph
from ..operators import FilterMode, FunctorSet, compute, filter_frontier
from ..stats import RunStats


@dataclass
class CcResult:
    component: np.ndarray
    num_components: int
    stats: RunStats


def cc(g: CsrGraph) -> CcResult:
    """Label every vertex with its component id.

    The edge frontier starts with one slot per undirected edge and sheds
    edges whose endpoints already share a component. Odd iterations hook
    the lower component id into the higher one's slot, even iterations the
    reverse; hooks within one iteration all point the same way, so the
    jump loop always terminates. Pointer jumping reflattens after every
    hook round.
    """
    if not (g.undirected or g.is_symmetric()):
        raise ValueError("cc expects an undirected graph")
    n = g.num_vertices
    comp = np.arange(n, dtype=np.int64)
    es = g.edge_sources()
    col = g.column_indices

    stats = RunStats("cc")
    t0 = time.perf_counter()

    all_edges = Frontier.from_items(np.arange(g.num_edges, dtype=np.int64), kind=EDGE)
    ef = filter_frontier(
        all_edges, FilterMode.EXACT,
        functors=FunctorSet(vertex_cond=lambda e, _: es[e] < col[e]),
    )

    it = 0
    while len(ef):
        it += 1
        it0 = time.perf_counter()
        in_size = len(ef)
        stats.edges_traversed += in_size
        ef = filter_frontier(
            ef, FilterMode.EXACT,
            functors=FunctorSet(vertex_cond=lambda e, _: comp[es[e]] != comp[col[e]]),
        )
        if len(ef):
            odd = it % 2 == 1

            def hook(edges, _):
                cu = comp[es[edges]]
                cv = comp[col[edges]]
                lo = np.minimum(cu, cv)
                hi = np.maximum(cu, cv)
                if odd:
                    comp[hi] = lo
                else:
                    comp[lo] = hi

            compute(ef, hook)
            _pointer_jump(comp)
        stats.record_iteration(it, in_size, len(ef), "hook",
                               (time.perf_counter() - it0) * 1000.0)

    stats.finalize((time.perf_counter() - t0) * 1000.0)
    return CcResult(
        component=comp,
        num_components=int(len(np.unique(comp))) if n else 0,
        stats=stats,
    )


def _pointer_jump(comp):
    """Collapse every component tree to a star: each pass re-points the
    still-moving vertices at their grandparent until none move."""
    vf = Frontier.from_items(np.arange(len(comp), dtype=np.int64), kind=VERTEX)

    def jump(v, _):
        parent = comp[comp[v]]
        changed = parent != comp[v]
        comp[v] = parent
        return changed

    while len(vf):
        vf = filter_frontier(vf, FilterMode.EXACT,
                             functors=FunctorSet(vertex_cond=jump))
