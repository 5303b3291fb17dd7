"""Command line front end.

Subcommands: exact (full-graph flow), estimate (bootstrap subsampling),
sweep-b / sweep-p (replication and proportion sweeps over many seeds),
bench (runtime scaling) and generate (write a random graph to disk).

Input is either --input FILE (edge list or MatrixMarket) or an inline
Erdos-Renyi generator via --er-n/--er-pi. Results are emitted as JSON or
CSV, to stdout or atomically to --out (no partial files on failure).
FLOWSAMPLE_THREADS caps bootstrap parallelism; 0 means all cores. Output
bytes never depend on the thread count, only durations vary.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import tempfile
import time
from dataclasses import dataclass
from typing import Callable, Optional, Union

from . import __version__
from .generators import CapacitySpec, ErConfig, erdos_renyi, pick_source_sink
from .graph import Graph, GraphError
from .graphio import (
    LabelMap,
    ParseError,
    RunRecord,
    load_graph,
    write_edge_list,
    write_run_record,
    write_run_records,
)
from .maxflow import edmonds_karp
from .rng import DOMAIN_ENDPOINTS, substream
from .sampler import SampleConfig, bootstrap_flow, subsample_size, summarize

CI_MODE_FLAGS = {"spread": "sample-spread", "stderr": "standard-error"}


class CliError(ValueError):
    pass


@dataclass
class ResolvedInput:
    graph: Graph
    labels: Optional[LabelMap]
    descriptor: str


def _thread_count() -> int:
    raw = os.environ.get("FLOWSAMPLE_THREADS")
    if raw is None:
        return 1
    try:
        k = int(raw)
    except ValueError:
        raise CliError(f"FLOWSAMPLE_THREADS must be an integer, got {raw!r}") from None
    if k < 0:
        raise CliError(f"FLOWSAMPLE_THREADS must be >= 0, got {k}")
    return k if k > 0 else (os.cpu_count() or 1)


def _input_loader(args) -> Callable[[int], ResolvedInput]:
    """Per-seed input factory: files load once, generator configs rebuild."""
    has_file = args.input is not None
    has_er = args.er_n is not None or args.er_pi is not None
    if has_file == has_er:
        raise CliError("give exactly one input: --input FILE or --er-n N --er-pi P")
    if has_file:
        parsed = load_graph(args.input, args.format, directed=args.directed)
        if parsed.self_loops_skipped:
            print(
                f"note: skipped {parsed.self_loops_skipped} self-loop line(s) in {args.input}",
                file=sys.stderr,
            )
        fixed = ResolvedInput(parsed.graph, parsed.labels, args.input)
        return lambda seed: fixed
    if args.er_n is None or args.er_pi is None:
        raise CliError("generator input needs both --er-n and --er-pi")
    cap = CapacitySpec.parse(args.er_cap)

    def make(seed: int) -> ResolvedInput:
        cfg = ErConfig(args.er_n, args.er_pi, cap, seed)
        return ResolvedInput(erdos_renyi(cfg), None, cfg.describe())

    return make


def _resolve_endpoints(args, ri: ResolvedInput, seed: int):
    """Vertex ids plus the label form echoed into records."""
    if (args.source is None) != (args.sink is None):
        raise CliError("give both --source and --sink, or neither")
    if args.source is not None:
        if ri.labels is not None:
            s = ri.labels.id_of(args.source)
            t = ri.labels.id_of(args.sink)
            s_out: Union[str, int] = args.source
            t_out: Union[str, int] = args.sink
        else:
            try:
                s, t = int(args.source), int(args.sink)
            except ValueError:
                raise CliError("generated graphs use integer vertex ids") from None
            s_out, t_out = s, t
        if not (0 <= s < ri.graph.n) or not (0 <= t < ri.graph.n):
            raise CliError(f"vertex out of range: s={s}, t={t}, n={ri.graph.n}")
        if s == t:
            raise CliError("source equals sink")
        return s, t, s_out, t_out
    s, t = pick_source_sink(ri.graph, substream(seed, DOMAIN_ENDPOINTS))
    if ri.labels is not None:
        return s, t, ri.labels.label_of(s), ri.labels.label_of(t)
    return s, t, s, t


def _emit(out: Optional[str], write: Callable) -> None:
    if out is None:
        write(sys.stdout)
        return
    target = os.path.abspath(out)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(target), prefix=".flowsample-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            write(fh)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _estimate_record(
    ri: ResolvedInput, s, t, s_out, t_out, cfg: SampleConfig, keep_phi: bool = False
) -> RunRecord:
    start = time.perf_counter()
    est = bootstrap_flow(ri.graph, s, t, cfg, threads=_thread_count())
    summ = summarize(est.scaled_flows, cfg.ci_level, cfg.ci_mode)
    duration = time.perf_counter() - start
    return RunRecord(
        input=ri.descriptor,
        n=ri.graph.n,
        m=ri.graph.m,
        source=s_out,
        sink=t_out,
        p=cfg.proportion,
        B=cfg.samples,
        seed=cfg.seed,
        ci_level=cfg.ci_level,
        ci_mode=cfg.ci_mode,
        mean=summ.mean,
        sd=summ.sd,
        ci_low=summ.ci_low,
        ci_high=summ.ci_high,
        disconnected_count=est.disconnected_count,
        duration_seconds=duration,
        version=__version__,
        phi=tuple(est.scaled_flows.tolist()) if keep_phi else None,
    )


def cmd_exact(args) -> int:
    ri = _input_loader(args)(args.seed)
    s, t, s_out, t_out = _resolve_endpoints(args, ri, args.seed)
    start = time.perf_counter()
    value = edmonds_karp(ri.graph, s, t).value
    duration = time.perf_counter() - start
    record = RunRecord(
        input=ri.descriptor,
        n=ri.graph.n,
        m=ri.graph.m,
        source=s_out,
        sink=t_out,
        p=1.0,
        B=1,
        seed=args.seed,
        ci_level=0.95,
        ci_mode="sample-spread",
        mean=value,
        sd=0.0,
        ci_low=value,
        ci_high=value,
        disconnected_count=1 if value == 0.0 else 0,
        duration_seconds=duration,
        version=__version__,
    )
    _emit(args.out, lambda fh: write_run_record(record, args.out_format, fh))
    return 0


def cmd_estimate(args) -> int:
    ri = _input_loader(args)(args.seed)
    s, t, s_out, t_out = _resolve_endpoints(args, ri, args.seed)
    cfg = SampleConfig(args.p, args.B, args.seed, args.ci_level, CI_MODE_FLAGS[args.ci_mode])
    record = _estimate_record(ri, s, t, s_out, t_out, cfg, keep_phi=True)
    _emit(args.out, lambda fh: write_run_record(record, args.out_format, fh))
    return 0


def _seed_list(args) -> list[int]:
    if args.seeds is not None:
        return [int(tok) for tok in args.seeds.split(",") if tok]
    return list(range(args.seed, args.seed + 20))


def cmd_sweep_b(args) -> int:
    b_list = [int(tok) for tok in args.B_list.split(",") if tok]
    if not b_list:
        raise CliError("--B-list must name at least one replication count")
    loader = _input_loader(args)
    records = []
    for seed in _seed_list(args):
        ri = loader(seed)
        s, t, s_out, t_out = _resolve_endpoints(args, ri, seed)
        for b in b_list:
            cfg = SampleConfig(args.p, b, seed, args.ci_level, CI_MODE_FLAGS[args.ci_mode])
            records.append(_estimate_record(ri, s, t, s_out, t_out, cfg))
    _emit(args.out, lambda fh: write_run_records(records, args.out_format, fh))
    return 0


def cmd_sweep_p(args) -> int:
    p_list = [float(tok) for tok in args.p_list.split(",") if tok]
    if not p_list:
        raise CliError("--p-list must name at least one proportion")
    loader = _input_loader(args)
    records = []
    for seed in _seed_list(args):
        ri = loader(seed)
        s, t, s_out, t_out = _resolve_endpoints(args, ri, seed)
        for p in p_list:
            cfg = SampleConfig(p, args.B, seed, args.ci_level, CI_MODE_FLAGS[args.ci_mode])
            records.append(_estimate_record(ri, s, t, s_out, t_out, cfg))
    _emit(args.out, lambda fh: write_run_records(records, args.out_format, fh))
    return 0


def _warm_solver() -> None:
    # absorb JIT compilation/cache load before any timed call
    g = erdos_renyi(ErConfig(2, 1.0))
    edmonds_karp(g, 0, 1)


def cmd_bench(args) -> int:
    n_list = [int(tok) for tok in args.n_list.split(",") if tok]
    if not n_list:
        raise CliError("--n-list must name at least one size")
    _warm_solver()
    rows = []
    for n in n_list:
        try:
            cfg = ErConfig(n, args.pi, CapacitySpec.unit(), args.seed)
            g = erdos_renyi(cfg)
            s, t = pick_source_sink(g, substream(args.seed, DOMAIN_ENDPOINTS))
            if args.mode == "paper-scaling":
                sigma = math.isqrt(n - 1) + 1  # ceil(sqrt(n))
                samples = n
                p = sigma / n
            else:
                sigma = subsample_size(n, args.p)
                samples = args.B
                p = args.p
            sample_cfg = SampleConfig(p, samples, args.seed)
            start = time.perf_counter()
            bootstrap_flow(g, s, t, sample_cfg, threads=_thread_count())
            seconds = time.perf_counter() - start
            rows.append(
                {"n": n, "B": samples, "sigma": sigma, "edges": g.m, "seconds": seconds}
            )
        except Exception as exc:
            print(f"bench n={n} failed: {exc}", file=sys.stderr)

    def write(fh) -> None:
        if args.out_format == "json":
            json.dump(rows, fh, indent=2)
            fh.write("\n")
        else:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["n", "B", "sigma", "edges", "seconds"])
            for row in rows:
                writer.writerow(
                    [row["n"], row["B"], row["sigma"], row["edges"], format(row["seconds"], ".17g")]
                )

    _emit(args.out, write)
    return 0


def cmd_generate(args) -> int:
    cfg = ErConfig(args.er_n, args.er_pi, CapacitySpec.parse(args.er_cap), args.seed)
    g = erdos_renyi(cfg)
    _emit(args.out, lambda fh: write_edge_list(g, fh))
    return 0


def _add_input_flags(sp) -> None:
    sp.add_argument("--input", metavar="PATH", help="graph file to read")
    sp.add_argument(
        "--format", choices=("edgelist", "mtx"), default="edgelist",
        help="file format for --input (default edgelist)",
    )
    direction = sp.add_mutually_exclusive_group()
    direction.add_argument(
        "--directed", dest="directed", action="store_true", default=True,
        help="treat file edges as directed arcs (default)",
    )
    direction.add_argument(
        "--undirected", dest="directed", action="store_false",
        help="emit both arcs for every file edge",
    )
    sp.add_argument("--er-n", type=int, metavar="N", help="generate: vertex count")
    sp.add_argument("--er-pi", type=float, metavar="P", help="generate: edge probability")
    sp.add_argument(
        "--er-cap", default="unit", metavar="SPEC",
        help="generate: capacities, unit | const:C | unif:LO,HI (default unit)",
    )
    sp.add_argument("--source", metavar="L", help="source label (file) or id (generated)")
    sp.add_argument("--sink", metavar="L", help="sink label (file) or id (generated)")


def _add_output_flags(sp) -> None:
    sp.add_argument("--out", metavar="PATH", help="output path (default stdout)")
    sp.add_argument(
        "--out-format", choices=("json", "csv"), default="json",
        help="output serialization (default json)",
    )


def _add_ci_flags(sp) -> None:
    sp.add_argument("--ci-level", type=float, default=0.95, help="confidence level (default 0.95)")
    sp.add_argument(
        "--ci-mode", choices=("spread", "stderr"), default="spread",
        help="interval style: spread = mean +/- z*sd, stderr = mean +/- z*sd/sqrt(B)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flowsample",
        description="Exact and subsampled s-t maximum flow on directed capacitated graphs.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("exact", help="full-graph maximum flow")
    _add_input_flags(sp)
    _add_output_flags(sp)
    sp.add_argument("--seed", type=int, default=0, help="seed for generation and endpoint choice")
    sp.set_defaults(func=cmd_exact)

    sp = sub.add_parser("estimate", help="bootstrap subsampling estimate")
    _add_input_flags(sp)
    _add_output_flags(sp)
    _add_ci_flags(sp)
    sp.add_argument("--p", type=float, default=0.1, help="subsample proportion (default 0.1)")
    sp.add_argument("--B", type=int, default=100, help="bootstrap replications (default 100)")
    sp.add_argument("--seed", type=int, default=0, help="RNG seed")
    sp.set_defaults(func=cmd_estimate)

    sp = sub.add_parser("sweep-b", help="estimate across replication counts and seeds")
    _add_input_flags(sp)
    _add_output_flags(sp)
    _add_ci_flags(sp)
    sp.add_argument("--p", type=float, default=0.5, help="subsample proportion (default 0.5)")
    sp.add_argument(
        "--B-list", dest="B_list", default="100,200,300,400,500,600,700,800,900,1000",
        metavar="N1,N2,...", help="replication counts (default 100..1000 step 100)",
    )
    sp.add_argument("--seed", type=int, default=0, help="first seed when --seeds is absent")
    sp.add_argument("--seeds", metavar="N1,N2,...", help="explicit seed list (default seed..seed+19)")
    sp.set_defaults(func=cmd_sweep_b)

    sp = sub.add_parser("sweep-p", help="estimate across subsample proportions and seeds")
    _add_input_flags(sp)
    _add_output_flags(sp)
    _add_ci_flags(sp)
    sp.add_argument(
        "--p-list", dest="p_list", default="0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0",
        metavar="F1,F2,...", help="proportions (default 0.1..1.0 step 0.1)",
    )
    sp.add_argument("--B", type=int, default=100, help="bootstrap replications (default 100)")
    sp.add_argument("--seed", type=int, default=0, help="first seed when --seeds is absent")
    sp.add_argument("--seeds", metavar="N1,N2,...", help="explicit seed list (default seed..seed+19)")
    sp.set_defaults(func=cmd_sweep_p)

    sp = sub.add_parser("bench", help="runtime scaling benchmark on generated graphs")
    _add_output_flags(sp)
    sp.set_defaults(out_format="csv")
    sp.add_argument(
        "--n-list", dest="n_list", default="200,400,800,1600",
        metavar="N1,N2,...", help="graph sizes (default 200,400,800,1600)",
    )
    sp.add_argument("--pi", type=float, default=0.05, help="edge probability (default 0.05)")
    sp.add_argument(
        "--mode", choices=("paper-scaling", "fixed"), default="paper-scaling",
        help="paper-scaling: B=n and subsample size ceil(sqrt(n)); fixed: use --p/--B",
    )
    sp.add_argument("--p", type=float, default=0.1, help="fixed mode proportion (default 0.1)")
    sp.add_argument("--B", type=int, default=100, help="fixed mode replications (default 100)")
    sp.add_argument("--seed", type=int, default=0, help="RNG seed")
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("generate", help="write a random graph as a canonical edge list")
    sp.add_argument("--er-n", type=int, required=True, metavar="N", help="vertex count")
    sp.add_argument("--er-pi", type=float, required=True, metavar="P", help="edge probability")
    sp.add_argument(
        "--er-cap", default="unit", metavar="SPEC",
        help="capacities, unit | const:C | unif:LO,HI (default unit)",
    )
    sp.add_argument("--seed", type=int, default=0, help="RNG seed")
    sp.add_argument("--out", metavar="PATH", help="output path (default stdout)")
    sp.set_defaults(func=cmd_generate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, GraphError, ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
