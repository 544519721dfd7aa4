"""Run statistics and throughput accounting."""
from __future__ import annotations

from dataclasses import dataclass, field, asdict

# Millions of traversed edges per second, by primitive. Traversal-style
# primitives report edges/time; betweenness centrality doubles the edge
# count for its forward+backward passes. Shortest path gets no throughput
# figure: an edge can be relaxed any number of times, so there is no
# meaningful per-edge rate.
_MTEPS_FACTOR = {
    "bfs": 1.0,
    "cc": 1.0,
    "pagerank": 1.0,
    "pr": 1.0,
    "tc": 1.0,
    "bc": 2.0,
}


def compute_mteps(primitive: str, edges_visited: int, runtime_ms: float):
    """Edge throughput in millions per second, or None when undefined
    (shortest path, zero runtime)."""
    name = primitive.lower()
    if name == "sssp":
        return None
    if runtime_ms is None or runtime_ms <= 0:
        return None
    factor = _MTEPS_FACTOR.get(name, 1.0)
    return factor * edges_visited / (runtime_ms * 1000.0)


@dataclass
class IterationStats:
    iteration: int
    frontier_in: int
    frontier_out: int
    mode: str
    runtime_ms: float


@dataclass
class RunStats:
    primitive: str
    total_runtime_ms: float = 0.0
    preprocess_ms: float = 0.0
    iterations: int = 0
    edges_traversed: int = 0
    mteps: float | None = None
    direction_switches: int = 0
    per_iteration: list[IterationStats] = field(default_factory=list)
    # (iteration, mode before the decision, n_f, n_u, m_f, m_u, decision)
    direction_trace: list[dict] = field(default_factory=list)

    def record_iteration(self, iteration, frontier_in, frontier_out, mode, runtime_ms):
        self.per_iteration.append(
            IterationStats(iteration, frontier_in, frontier_out, mode, runtime_ms)
        )
        self.iterations = iteration

    def finalize(self, runtime_ms: float) -> "RunStats":
        self.total_runtime_ms = runtime_ms
        self.mteps = compute_mteps(self.primitive, self.edges_traversed, runtime_ms)
        return self

    def to_dict(self) -> dict:
        return asdict(self)
