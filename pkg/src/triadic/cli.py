"""Command-line interface: exact, partition, estimate, compare, bench.

Exit codes: 0 success, 2 usage error, 3 data error (unreadable or
malformed input files, mismatched partitions).
"""

from __future__ import annotations

import argparse
import os
import sys
import time

import numpy as np

from . import datasets
from .exact import CoefficientKind, exact_bucket_averages
from .graph import Graph, GraphFormatError, StructuralError, load_cache, load_edge_list, save_cache
from .partition import SCHEMES, load_partition_file, make_partition, write_partition
from .report import (PHASES, RunManifest, phase_fractions, report_json, report_rows,
                     write_csv, write_json)
from .rng import SEED_ENV
from .triad import RunConfig, run_triad, run_triad_f
from .wedge import run_wedge_sampler

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 2, 3
ALGOS = ("triad", "triad-f", "ws")


class UsageError(Exception):
    pass


# -- argument helpers --------------------------------------------------------

def _q_arg(text: str):
    if text == "auto":
        return "auto"
    try:
        q = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected 'auto' or a number") from None
    if not 0.0 <= q <= 0.5:
        raise argparse.ArgumentTypeError("q must lie in [0, 0.5]")
    return q


def _filter_arg(text: str):
    if text == "auto":
        return None
    try:
        c = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected 'auto' or a number") from None
    if c < 0:
        raise argparse.ArgumentTypeError("filter constant must be >= 0")
    return c


def read_eps(text: str):
    """A float, or ``@path`` naming a file with one float per bucket per line."""
    if text.startswith("@"):
        vals = []
        with open(text[1:]) as fh:
            for lineno, line in enumerate(fh, start=1):
                s = line.strip()
                if not s or s.startswith("#"):
                    continue
                try:
                    vals.append(float(s))
                except ValueError:
                    raise GraphFormatError(f"bad eps value {s!r}", lineno) from None
        return vals
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"--eps expects a float or @file, got {text!r}") from None


def resolve_seed(seed):
    """Explicit seed, else ``$TRIAD_SEED``, else fresh entropy (recorded so runs can be replayed)."""
    if seed is not None:
        return seed
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"${SEED_ENV} must be an integer") from None
    return int(np.random.SeedSequence().entropy % (1 << 63))


def load_input_graph(path, cache=None) -> Graph:
    if cache and os.path.exists(cache):
        return load_cache(cache)
    if str(path).endswith(".mtx"):
        g = datasets.load_mtx(path)
    else:
        g = load_edge_list(path, extra_columns=True)[0]
    if cache:
        save_cache(g, cache)
    return g


def build_partition(g: Graph, args, seed=None):
    if args.scheme == "file" or args.labels:
        if not args.labels:
            raise UsageError("--scheme file needs --labels")
        return load_partition_file(args.labels, g)
    return make_partition(g, args.scheme, k=args.k, rng=np.random.default_rng(
        np.random.PCG64(seed).jumped(1)) if args.scheme == "rand" else None)


def _set_threads(n: int) -> None:
    if n > 1:
        import numba
        numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))


def _out_stream(args):
    return args.out if args.out else "-"


# -- subcommands -------------------------------------------------------------

def cmd_exact(args) -> int:
    g = load_input_graph(args.graph, args.cache)
    part = build_partition(g, args, resolve_seed(args.seed) if args.scheme == "rand" else None)
    psi = exact_bucket_averages(g, part, args.coefficient)
    rows = [{"bucket_id": j, "size": int(part.sizes[j]), "psi_exact": float(psi[j])}
            for j in range(part.k)]
    if args.format == "json":
        write_json({"coefficient": CoefficientKind.parse(args.coefficient).value, "rows": rows},
                   _out_stream(args))
    else:
        write_csv(rows, _out_stream(args), columns=("bucket_id", "size", "psi_exact"))
    return EXIT_OK


def cmd_partition(args) -> int:
    g = load_input_graph(args.graph, args.cache)
    part = build_partition(g, args, resolve_seed(args.seed))
    if args.out:
        write_partition(part, args.out)
    else:
        sys.stdout.write("".join(f"{j}\n" for j in part.assignment.tolist()))
    return EXIT_OK


def _run(algo, g, part, kind, cfg: RunConfig, budget=None, full_sweep=False):
    if algo == "triad":
        return run_triad(g, part, kind, cfg)
    if algo == "triad-f":
        if budget is None and not full_sweep:
            budget = max(g.m // 100, 1)
        return run_triad_f(g, part, kind, budget, cfg, full_sweep=full_sweep)
    return run_wedge_sampler(g, part, kind, cfg.eps, cfg.eta, rng=cfg.seed)


def _config(args, seed) -> RunConfig:
    return RunConfig(eps=read_eps(args.eps), eta=args.eta, theta=args.theta, c=args.c,
                     filter_c=args.filter_c, q=args.q, seed=seed,
                     width_engine=args.width, threads=args.threads)


def write_explain(report, dest) -> None:
    b = report.bounds
    rows = [{"bucket": j, "R_j": float(r), "zeta": b["zeta"], "s_max": b["s_max"], "s_0": b["s_0"]}
            for j, r in enumerate(b.get("R_j", []))]
    text = write_csv(rows, None, columns=("bucket", "R_j", "zeta", "s_max", "s_0"))
    if dest in (None, "-"):
        sys.stderr.write(text)
    else:
        with open(dest, "w") as fh:
            fh.write(text)


def cmd_estimate(args) -> int:
    seed = resolve_seed(args.seed)
    _set_threads(args.threads)
    g = load_input_graph(args.graph, args.cache)
    part = build_partition(g, args, seed)
    cfg = _config(args, seed)
    report = _run(args.algo, g, part, args.coefficient, cfg, args.budget, args.full_sweep)
    manifest = RunManifest.build(args.argv, vars_for_manifest(args, cfg), g, part, seed, report.phases)
    out = _out_stream(args)
    if args.format == "json":
        write_json(report_json(report, manifest), out)
    else:
        write_csv(report_rows(report), out)
        if args.out:
            write_json(manifest.to_dict(), args.out + ".manifest.json")
    if args.explain is not None:
        if args.algo == "ws":
            raise UsageError("--explain applies to triad and triad-f")
        write_explain(report, args.explain)
    return EXIT_OK


def vars_for_manifest(args, cfg: RunConfig) -> dict:
    d = {k: v for k, v in vars(args).items() if k not in ("func", "argv")}
    d["resolved"] = {"eps": cfg.eps, "filter_c": cfg.filter_c, "q": cfg.q, "seed": cfg.seed}
    return d


def cmd_compare(args) -> int:
    base = resolve_seed(args.seed)
    _set_threads(args.threads)
    g = load_input_graph(args.graph, args.cache)
    part = build_partition(g, args, base)
    kinds = ["clustering", "closure"] if args.coefficient == "both" else [args.coefficient]
    rows = []
    for kind in kinds:
        psi = exact_bucket_averages(g, part, kind)
        for rep in range(args.repeat):
            seed = base + rep
            for algo in args.algos:
                cfg = _config(args, seed)
                r = _run(algo, g, part, kind, cfg, args.budget)
                err = np.abs(r.estimates - psi)
                rows.append({"kind": CoefficientKind.parse(kind).value, "seed": seed, "algorithm": algo,
                             "sup_error": float(err.max()), "mean_error": float(err.mean()),
                             "max_eps_hat": float(r.eps_hat.max()), "samples": r.samples,
                             "wall_time": r.wall_time, "terminated_by": r.termination})
    cols = ("kind", "seed", "algorithm", "sup_error", "mean_error", "max_eps_hat",
            "samples", "wall_time", "terminated_by")
    if args.format == "json":
        write_json({"rows": rows}, _out_stream(args))
    else:
        write_csv(rows, _out_stream(args), columns=cols)
    return EXIT_OK


def cmd_bench(args) -> int:
    base = resolve_seed(args.seed)
    _set_threads(args.threads)
    g = load_input_graph(args.graph, args.cache)
    part = build_partition(g, args, base)
    rows = []
    for rep in range(args.repeat):
        cfg = _config(args, base + rep)
        t = time.perf_counter()
        r = _run("triad-f" if args.algo == "triad-f" else "triad", g, part, args.coefficient,
                 cfg, args.budget)
        wall = time.perf_counter() - t
        frac = phase_fractions(r.phases)
        for p in PHASES:
            rows.append({"run": rep, "phase": p, "seconds": float(r.phases.get(p, 0.0)),
                         "fraction": float(frac[p]), "wall_time": wall})
    write_csv(rows, _out_stream(args), columns=("run", "phase", "seconds", "fraction", "wall_time"))
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def _graph_args(p):
    p.add_argument("--graph", required=True, help="edge list (or .mtx) path")
    p.add_argument("--cache", help="binary CSR cache; read if present, else written")


def _partition_args(p, default="logdeg"):
    p.add_argument("--scheme", choices=SCHEMES, default=default)
    p.add_argument("--k", type=int, help="number of buckets (core/deg/rand)")
    p.add_argument("--labels", help="label file for --scheme file")


def _estimation_args(p, kinds=("clustering", "closure")):
    p.add_argument("--coefficient", default=kinds[-1] if "both" in kinds else kinds[0],
                   type=str.lower, choices=kinds)
    p.add_argument("--eps", default="0.075", help="target half-width: float or @file")
    p.add_argument("--eta", type=float, default=0.01)
    p.add_argument("--theta", type=float, default=1.4)
    p.add_argument("--c", type=int, default=500, help="edges drawn to fit the variance model")
    p.add_argument("--q", type=_q_arg, default="auto")
    p.add_argument("--budget", type=int, help="draws for triad-f (default m/100)")
    p.add_argument("--filter-c", type=_filter_arg, default=None, dest="filter_c",
                   help="filtering constant; 'auto' (default) or 0 to disable")
    p.add_argument("--width", choices=("prpl", "eb"), default="prpl")
    p.add_argument("--threads", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="triadic", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", help="exact bucket averages")
    _graph_args(p)
    _partition_args(p)
    p.add_argument("--coefficient", default="clustering", type=str.lower,
                   choices=("clustering", "closure"))
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("partition", help="write one bucket label per node")
    _graph_args(p)
    _partition_args(p)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("estimate", help="estimate bucket averages")
    _graph_args(p)
    _partition_args(p)
    _estimation_args(p)
    p.add_argument("--algo", choices=ALGOS, default="triad")
    p.add_argument("--full-sweep", action="store_true", help="triad-f: one pass over all edges")
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--explain", nargs="?", const="-", default=None,
                   help="dump per-bucket bounds as CSV (stderr, or the given path)")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("compare", help="all algorithms against the exact values")
    _graph_args(p)
    _partition_args(p)
    _estimation_args(p, kinds=("clustering", "closure", "both"))
    p.add_argument("--algos", nargs="+", choices=ALGOS, default=list(ALGOS))
    p.add_argument("--repeat", type=int, default=1, help="seeds seed, seed+1, ...")
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("bench", help="per-phase timings")
    _graph_args(p)
    _partition_args(p)
    _estimation_args(p)
    p.add_argument("--algo", choices=("triad", "triad-f"), default="triad")
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.argv = ["triadic", *argv]
    try:
        return args.func(args)
    except (GraphFormatError, StructuralError, OSError) as exc:
        print(f"triadic: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (UsageError, ValueError) as exc:
        print(f"triadic: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
