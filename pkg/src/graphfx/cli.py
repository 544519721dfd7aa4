"""Command-line driver.

    graphfx <primitive> --graph <path|rmat:S,E|rgg:S[,T]|er:N,P> [options]
    graphfx sweep --graph ... --do-a-grid 1e-4,1e-3 --do-b-grid 0.1,0.5

Exit codes: 0 success, 2 configuration error, 3 data error.
"""
from __future__ import annotations

import argparse
import os
import sys

from .bench import (
    PRIMITIVES,
    BenchmarkConfig,
    emit_report,
    run_benchmark,
    run_sweep,
    sweep_to_csv,
)
from .generators import (
    generate_erdos_renyi,
    generate_rgg,
    generate_rmat,
    rgg_threshold_for_scale,
)
from .graph import CsrGraph, GraphFormatError, assign_random_weights, coo_to_csr
from .io import load_graph
from .load_balance import LbParams, Strategy
from .operators import FilterMode

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3


class ConfigError(ValueError):
    pass


def resolve_graph(spec: str, seed: int, make_undirected: bool) -> CsrGraph:
    """A path, or a generator spec rmat:scale,edge_factor / rgg:scale[,thr]
    / er:n,p. Generated graphs are always built undirected."""
    if ":" in spec and not os.path.exists(spec):
        kind, _, rest = spec.partition(":")
        args = rest.split(",") if rest else []
        try:
            if kind == "rmat":
                scale, ef = int(args[0]), int(args[1])
                return coo_to_csr(generate_rmat(scale, ef, seed=seed), make_undirected=True)
            if kind == "rgg":
                scale = int(args[0])
                thr = float(args[1]) if len(args) > 1 else rgg_threshold_for_scale(scale)
                return coo_to_csr(generate_rgg(scale, thr, seed=seed), make_undirected=True)
            if kind == "er":
                n, p = int(args[0]), float(args[1])
                return coo_to_csr(generate_erdos_renyi(n, p, seed=seed), make_undirected=True)
        except (IndexError, ValueError) as exc:
            raise ConfigError(f"bad graph spec {spec!r}: {exc}") from exc
        raise ConfigError(f"unknown generator {kind!r}")
    return load_graph(spec, make_undirected=make_undirected)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphfx")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--graph", required=True,
                       help="file path or rmat:S,E / rgg:S[,T] / er:N,P")
        p.add_argument("--undirected", action="store_true",
                       help="symmetrize a loaded graph")
        p.add_argument("--source", default="0",
                       help="source vertex id or 'random'")
        p.add_argument("--traversal-mode", default="auto",
                       choices=[s.value for s in Strategy])
        p.add_argument("--direction", default="push",
                       choices=["push", "pull", "auto"])
        p.add_argument("--do-a", type=float, default=0.001)
        p.add_argument("--do-b", type=float, default=0.2)
        p.add_argument("--mu-edge-based", action="store_true",
                       help="estimate unexplored edges from m instead of n")
        p.add_argument("--delta", type=int, default=None)
        p.add_argument("--no-priority-queue", action="store_true")
        p.add_argument("--idempotent", action="store_true")
        p.add_argument("--filter-mode", default="exact", choices=["exact", "inexact"])
        p.add_argument("--iters", type=int, default=10,
                       help="benchmark repetitions")
        p.add_argument("--warmup", type=int, default=1)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
        p.add_argument("--chunk-size", type=int, default=4096,
                       help="output slots per balanced chunk")
        p.add_argument("--items-per-chunk", type=int, default=256)
        p.add_argument("--twc-cuts", default="32,256",
                       help="small,large degree cuts for dynamic grouping")
        p.add_argument("--weight-range", default="1,64",
                       help="lo,hi for auto-assigned integer weights")
        p.add_argument("--damping", type=float, default=0.85)
        p.add_argument("--epsilon", type=float, default=1e-6)
        p.add_argument("--max-iters", type=int, default=100)
        p.add_argument("--output", default="table", choices=["json", "csv", "table"])
        p.add_argument("--output-file", default=None)

    for name in PRIMITIVES:
        common(sub.add_parser(name))
    sweep = sub.add_parser("sweep")
    common(sweep)
    sweep.add_argument("--do-a-grid", default="1e-4,1e-3,1e-2")
    sweep.add_argument("--do-b-grid", default="0.1,0.2,0.5")
    sweep.add_argument("--runs", type=int, default=25)
    return parser


def _lb_params(args) -> LbParams:
    try:
        small, large = (int(x) for x in args.twc_cuts.split(","))
    except ValueError as exc:
        raise ConfigError(f"bad --twc-cuts {args.twc_cuts!r}") from exc
    return LbParams(small_cut=small, large_cut=large,
                    chunk_size=args.chunk_size,
                    items_per_chunk=args.items_per_chunk)


def _primitive_options(args) -> dict:
    params = _lb_params(args)
    strategy = Strategy(args.traversal_mode)
    name = args.command
    opts: dict = {}
    if name == "bfs":
        opts = dict(
            idempotent=args.idempotent,
            direction=args.direction,
            do_a=args.do_a,
            do_b=args.do_b,
            mu_edge_based=args.mu_edge_based,
            filter_mode=FilterMode(args.filter_mode),
            strategy=strategy,
            params=params,
            num_threads=args.threads,
        )
    elif name == "sssp":
        opts = dict(
            delta=args.delta,
            use_priority_queue=not args.no_priority_queue,
            strategy=strategy,
            params=params,
            num_threads=args.threads,
        )
    elif name == "bc":
        opts = dict(strategy=strategy, params=params, num_threads=args.threads)
    elif name == "cc":
        opts = {}
    elif name == "pagerank":
        opts = dict(
            damping=args.damping,
            epsilon=args.epsilon,
            max_iters=args.max_iters,
            strategy=strategy,
            params=params,
            num_threads=args.threads,
        )
    elif name == "tc":
        opts = dict(strategy=strategy, params=params, num_threads=args.threads)
    return opts


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise ConfigError(f"cannot write output file: {exc}") from exc


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        g = resolve_graph(args.graph, args.seed, args.undirected)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (GraphFormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA

    try:
        if args.command == "sweep":
            try:
                grid_a = [float(x) for x in args.do_a_grid.split(",")]
                grid_b = [float(x) for x in args.do_b_grid.split(",")]
            except ValueError as exc:
                raise ConfigError(f"bad sweep grid: {exc}") from exc
            rows = run_sweep(g, grid_a, grid_b, runs=args.runs, seed=args.seed,
                             strategy=Strategy(args.traversal_mode),
                             params=_lb_params(args), num_threads=args.threads)
            _write_output(sweep_to_csv(rows), args.output_file)
            return EXIT_OK

        if args.command == "sssp" and g.edge_weights is None:
            try:
                lo, hi = (int(x) for x in args.weight_range.split(","))
            except ValueError as exc:
                raise ConfigError(f"bad --weight-range {args.weight_range!r}") from exc
            g = assign_random_weights(g, lo, hi, args.seed)

        source: int | str
        if args.source == "random":
            source = "random"
        else:
            try:
                source = int(args.source)
            except ValueError as exc:
                raise ConfigError(f"bad --source {args.source!r}") from exc
            if not 0 <= source < g.num_vertices:
                raise ConfigError(f"source {source} out of range for n={g.num_vertices}")

        config = BenchmarkConfig(
            primitive=args.command,
            source=source,
            repetitions=args.iters,
            warmup=args.warmup,
            seed=args.seed,
            options=_primitive_options(args),
        )
        report = run_benchmark(config, g)
        _write_output(emit_report(report, args.output), args.output_file)
        return EXIT_OK
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
