"""Work partitioning for frontier expansion.

An expansion step turns every frontier item into its neighbor-list slots.
The planners below tile that work into chunks in different ways:

* ``THREAD_EXPAND``: one chunk per input item (cheap, uneven).
* ``TWC``: items grouped into large / medium / small classes by degree,
  large lists handled by a full worker team, medium by a sub-team.
* ``LB``: equal-width chunks over *output* slots; each chunk locates its
  first source item by binary search in the scan offsets.
* ``LB_LIGHT``: equal-width chunks over *input* items.
* ``LB_CULL``: LB/LB_LIGHT partitioning (picked by frontier size) for the
  fused traverse-and-cull path.

Chunks are contiguous slot ranges, immutable once planned, and tile the
work exactly once; execution order across chunks carries no correctness
weight.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .frontier import Frontier
from .graph import ID_DTYPE, CsrGraph


class Strategy(Enum):
    THREAD_EXPAND = "thread_expand"
    TWC = "twc"
    LB = "lb"
    LB_LIGHT = "lb_light"
    LB_CULL = "lb_cull"
    AUTO = "auto"


# Average-degree cutoff between the balanced-partition family and dynamic
# grouping, and the frontier-size cutoff between input- and output-balanced
# partitioning inside that family.
AVG_DEGREE_CUT = 5.0
FRONTIER_SIZE_CUT = 4096


@dataclass
class LbParams:
    """Tunable knobs for the planners; defaults match the CLI defaults."""

    small_cut: int = 32
    large_cut: int = 256
    chunk_size: int = 4096
    items_per_chunk: int = 256
    frontier_cut: int = FRONTIER_SIZE_CUT
    team_width: int = 256
    subteam_width: int = 32


@dataclass(frozen=True)
class Chunk:
    """A contiguous range of output slots plus how to resolve sources.

    ``partition == "input"`` chunks own items [item_begin, item_end) whole;
    ``partition == "output"`` chunks own slots [slot_begin, slot_end) and
    carry the searched first-source index as a starting hint.
    """

    slot_begin: int
    slot_end: int
    item_begin: int
    item_end: int
    partition: str = "input"
    team_width: int = 1
    size_class: str = ""


@dataclass
class LoadBalancePlan:
    strategy: Strategy
    scan_offsets: np.ndarray
    total_output: int
    chunks: list[Chunk]

    @property
    def num_chunks(self) -> int:
        return len(self.chunks)


def scan_from_degrees(degrees: np.ndarray) -> tuple[np.ndarray, int]:
    scan = np.zeros(len(degrees) + 1, dtype=ID_DTYPE)
    np.cumsum(degrees, out=scan[1:])
    return scan, int(scan[-1])


def expansion_vertices(g: CsrGraph, f: Frontier) -> np.ndarray:
    """The vertex whose neighbor list each frontier item expands.

    Vertex frontiers expand the item itself; edge frontiers expand the
    edge's destination endpoint.
    """
    items = f.to_array()
    return items if f.kind == "vertex" else g.column_indices[items]


def compute_scan_offsets(g: CsrGraph, f: Frontier) -> tuple[np.ndarray, int]:
    """Exclusive prefix sum of per-item neighbor-list lengths.

    ``scan[i]`` is where item i's output starts; ``scan[-1]`` is the total
    expansion size.
    """
    ev = expansion_vertices(g, f)
    degrees = g.row_offsets[ev + 1] - g.row_offsets[ev]
    return scan_from_degrees(degrees)


def plan_thread_expand(f: Frontier, scan: np.ndarray) -> LoadBalancePlan:
    """One chunk per input item, zero-degree items included."""
    chunks = [
        Chunk(int(scan[i]), int(scan[i + 1]), i, i + 1)
        for i in range(len(f))
    ]
    return LoadBalancePlan(Strategy.THREAD_EXPAND, scan, int(scan[-1]), chunks)


def plan_twc(
    f: Frontier,
    scan: np.ndarray,
    small_cut: int = 32,
    large_cut: int = 256,
    team_width: int = 256,
    subteam_width: int = 32,
) -> LoadBalancePlan:
    """Group items into size classes; cuts are inclusive lower bounds.

    Large lists (degree >= large_cut) run first on a full team, then
    medium lists (>= small_cut) on sub-teams, then the rest per item.
    """
    if small_cut >= large_cut:
        raise ValueError("small_cut must be < large_cut")
    degrees = np.diff(scan)
    classes = (
        ("large", np.flatnonzero(degrees >= large_cut), team_width),
        ("medium", np.flatnonzero((degrees >= small_cut) & (degrees < large_cut)), subteam_width),
        ("small", np.flatnonzero(degrees < small_cut), 1),
    )
    chunks = []
    for name, idx, width in classes:
        for i in idx:
            i = int(i)
            chunks.append(
                Chunk(int(scan[i]), int(scan[i + 1]), i, i + 1,
                      team_width=width, size_class=name)
            )
    return LoadBalancePlan(Strategy.TWC, scan, int(scan[-1]), chunks)


def plan_lb_output(
    scan: np.ndarray, total_output: int, chunk_size: int = 4096
) -> LoadBalancePlan:
    """ceil(total/N) chunks of N output slots each; the arithmetic
    progression 0, N, 2N, ... searched in the scan offsets gives each
    chunk its first source item."""
    if chunk_size < 1:
        raise ValueError("chunk_size must be >= 1")
    starts = np.arange(0, total_output, chunk_size, dtype=ID_DTYPE)
    firsts = np.searchsorted(scan, starts, side="right") - 1
    chunks = []
    for k, lo in enumerate(starts):
        hi = min(int(lo) + chunk_size, total_output)
        first_item = int(firsts[k])
        last_item = int(np.searchsorted(scan, hi - 1, side="right") - 1) if hi > lo else first_item
        chunks.append(
            Chunk(int(lo), hi, first_item, last_item + 1, partition="output",
                  team_width=chunk_size)
        )
    return LoadBalancePlan(Strategy.LB, scan, int(total_output), chunks)


def plan_lb_input(
    f: Frontier, scan: np.ndarray, items_per_chunk: int = 256
) -> LoadBalancePlan:
    """Equal input-item chunks; workers cover each chunk's slot range."""
    if items_per_chunk < 1:
        raise ValueError("items_per_chunk must be >= 1")
    n_items = len(f)
    chunks = []
    for lo in range(0, n_items, items_per_chunk):
        hi = min(lo + items_per_chunk, n_items)
        chunks.append(
            Chunk(int(scan[lo]), int(scan[hi]), lo, hi, team_width=items_per_chunk)
        )
    return LoadBalancePlan(Strategy.LB_LIGHT, scan, int(scan[-1]), chunks)


def choose_strategy(g: CsrGraph, f: Frontier, params: LbParams | None = None) -> Strategy:
    """Heuristic used by AUTO: dense-enough graphs get the balanced
    partition family (input-balanced for small frontiers, output-balanced
    otherwise); sparse graphs get dynamic grouping."""
    params = params or LbParams()
    if g.average_degree >= AVG_DEGREE_CUT:
        return Strategy.LB_LIGHT if len(f) < params.frontier_cut else Strategy.LB
    return Strategy.TWC


def build_plan(
    g: CsrGraph,
    f: Frontier,
    strategy: Strategy = Strategy.AUTO,
    params: LbParams | None = None,
    scan: np.ndarray | None = None,
    total: int | None = None,
) -> LoadBalancePlan:
    """Resolve a strategy and partition the expansion of ``f`` over ``g``.

    ``scan``/``total`` may be passed when the caller already computed them
    (for example pull traversal planning over the reverse adjacency).
    """
    params = params or LbParams()
    if scan is None:
        scan, total = compute_scan_offsets(g, f)
    if strategy == Strategy.AUTO:
        strategy = choose_strategy(g, f, params)
    if strategy == Strategy.THREAD_EXPAND:
        return plan_thread_expand(f, scan)
    if strategy == Strategy.TWC:
        return plan_twc(f, scan, params.small_cut, params.large_cut,
                        params.team_width, params.subteam_width)
    if strategy == Strategy.LB:
        return plan_lb_output(scan, total, params.chunk_size)
    if strategy == Strategy.LB_LIGHT:
        return plan_lb_input(f, scan, params.items_per_chunk)
    if strategy == Strategy.LB_CULL:
        if len(f) < params.frontier_cut:
            plan = plan_lb_input(f, scan, params.items_per_chunk)
        else:
            plan = plan_lb_output(scan, total, params.chunk_size)
        plan.strategy = Strategy.LB_CULL
        return plan
    raise ValueError(f"unknown strategy {strategy!r}")


def plan_pairs(plan: LoadBalancePlan) -> np.ndarray:
    """Flatten a plan to (input item index, output slot) rows, in chunk
    order. Used to audit that chunks tile the work exactly once."""
    scan = plan.scan_offsets
    rows = []
    for ch in plan.chunks:
        slots = np.arange(ch.slot_begin, ch.slot_end, dtype=ID_DTYPE)
        if ch.partition == "input":
            counts = np.diff(scan[ch.item_begin : ch.item_end + 1])
            items = np.repeat(
                np.arange(ch.item_begin, ch.item_end, dtype=ID_DTYPE), counts
            )
        else:
            window = scan[ch.item_begin : ch.item_end + 1]
            items = ch.item_begin + np.searchsorted(window, slots, side="right") - 1
        rows.append(np.stack([items, slots], axis=1))
    if not rows:
        return np.empty((0, 2), dtype=ID_DTYPE)
    return np.concatenate(rows, axis=0)
