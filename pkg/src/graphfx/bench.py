"""Benchmark harness: repeated primitive runs, parameter sweeps, reports.

Timing covers the primitive's operator loop only; graph loading,
generation, and preprocessing (reverse-adjacency build, edge orientation)
are kept out of the reported runtime, with preprocessing surfaced as its
own field.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np

from .graph import UNVISITED, CsrGraph, assign_random_weights
from .primitives import bc, bfs, cc, pagerank, sssp, tc
from .stats import RunStats

PRIMITIVES = ("bfs", "sssp", "bc", "cc", "pagerank", "tc")
_NEEDS_SOURCE = {"bfs", "sssp", "bc"}

CSV_FIELDS = [
    "run", "source", "runtime_ms", "preprocess_ms", "iterations",
    "edges_traversed", "mteps", "direction_switches",
]


@dataclass
class BenchmarkConfig:
    primitive: str
    source: int | str = 0  # vertex id or "random"
    repetitions: int = 10
    warmup: int = 1
    seed: int = 0
    options: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.primitive not in PRIMITIVES:
            raise ValueError(f"unknown primitive {self.primitive!r}")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")


def _run_once(primitive: str, g: CsrGraph, source: int, options: dict):
    if primitive == "bfs":
        return bfs(g, source, **options)
    if primitive == "sssp":
        return sssp(g, source, **options)
    if primitive == "bc":
        return bc(g, source, **options)
    if primitive == "cc":
        return cc(g, **options)
    if primitive == "pagerank":
        return pagerank(g, **options)
    if primitive == "tc":
        return tc(g, **options)
    raise ValueError(primitive)


def _summarize(primitive: str, result) -> dict:
    if primitive == "bfs":
        reached = int((result.labels != UNVISITED).sum())
        depth = int(result.labels[result.labels != UNVISITED].max()) if reached else 0
        return {"reached": reached, "max_depth": depth}
    if primitive == "sssp":
        return {"reached": int((result.labels != UNVISITED).sum())}
    if primitive == "bc":
        return {"max_bc": float(result.bc_values.max()) if len(result.bc_values) else 0.0}
    if primitive == "cc":
        return {"components": result.num_components}
    if primitive == "pagerank":
        return {"rank_sum": float(result.rank.sum())}
    if primitive == "tc":
        return {"triangles": result.total_triangles}
    return {}


def run_benchmark(config: BenchmarkConfig, g: CsrGraph) -> dict:
    """Warm up, run ``repetitions`` times, and report per-run stats plus
    means. With ``source="random"`` a fresh source is drawn per run."""
    config.validate()
    rng = np.random.default_rng(config.seed)
    primitive = config.primitive

    if primitive == "sssp" and g.edge_weights is None:
        g = assign_random_weights(g, 1, 64, config.seed)

    def pick_source(run_idx: int) -> int:
        if primitive not in _NEEDS_SOURCE:
            return -1
        if config.source == "random":
            return int(rng.integers(0, g.num_vertices))
        return int(config.source)

    for _ in range(config.warmup):
        _run_once(primitive, g, pick_source(-1), config.options)

    runs = []
    for i in range(config.repetitions):
        source = pick_source(i)
        result = _run_once(primitive, g, source, config.options)
        stats: RunStats = result.stats
        runs.append(
            {
                "run": i,
                "source": source,
                "runtime_ms": stats.total_runtime_ms,
                "preprocess_ms": stats.preprocess_ms,
                "iterations": stats.iterations,
                "edges_traversed": stats.edges_traversed,
                "mteps": stats.mteps,
                "direction_switches": stats.direction_switches,
                "summary": _summarize(primitive, result),
            }
        )

    mteps_vals = [r["mteps"] for r in runs if r["mteps"] is not None]
    return {
        "primitive": primitive,
        "num_vertices": g.num_vertices,
        "num_edges": g.num_edges,
        "repetitions": config.repetitions,
        "source_mode": config.source,
        "runs": runs,
        "mean_runtime_ms": float(np.mean([r["runtime_ms"] for r in runs])),
        "mean_mteps": float(np.mean(mteps_vals)) if mteps_vals else None,
    }


def emit_report(report: dict, fmt: str = "table") -> str:
    """Render a benchmark report as json, csv, or a text table."""
    if fmt == "json":
        return json.dumps(report, indent=2)
    if fmt == "csv":
        out = io.StringIO()
        writer = csv.DictWriter(out, fieldnames=CSV_FIELDS, extrasaction="ignore")
        writer.writeheader()
        for row in report["runs"]:
            writer.writerow(row)
        return out.getvalue()
    if fmt == "table":
        lines = [
            f"{report['primitive']}  n={report['num_vertices']} m={report['num_edges']}",
            f"{'run':>4} {'source':>8} {'runtime_ms':>12} {'mteps':>10} {'iters':>6}",
        ]
        for r in report["runs"]:
            mteps = f"{r['mteps']:.2f}" if r["mteps"] is not None else "-"
            lines.append(
                f"{r['run']:>4} {r['source']:>8} {r['runtime_ms']:>12.3f} "
                f"{mteps:>10} {r['iterations']:>6}"
            )
        mean_mteps = (
            f"{report['mean_mteps']:.2f}" if report["mean_mteps"] is not None else "-"
        )
        lines.append(
            f"mean {'':>8} {report['mean_runtime_ms']:>12.3f} {mean_mteps:>10}"
        )
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown output format {fmt!r}")


def run_sweep(
    g: CsrGraph,
    do_a_grid,
    do_b_grid,
    runs: int = 25,
    seed: int = 0,
    **bfs_options,
) -> list[dict]:
    """Direction-parameter sweep: for each (do_a, do_b) cell run BFS
    ``runs`` times from random sources and average runtime and MTEPS."""
    rng = np.random.default_rng(seed)
    sources = rng.integers(0, g.num_vertices, size=runs)
    rows = []
    for a in do_a_grid:
        for b in do_b_grid:
            times, rates = [], []
            for s in sources:
                r = bfs(g, int(s), direction="auto", do_a=float(a), do_b=float(b),
                        **bfs_options)
                times.append(r.stats.total_runtime_ms)
                if r.stats.mteps is not None:
                    rates.append(r.stats.mteps)
            rows.append(
                {
                    "do_a": float(a),
                    "do_b": float(b),
                    "runtime_ms": float(np.mean(times)),
                    "mteps": float(np.mean(rates)) if rates else None,
                }
            )
    return rows


def sweep_to_csv(rows: list[dict]) -> str:
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=["do_a", "do_b", "runtime_ms", "mteps"])
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return out.getvalue()
