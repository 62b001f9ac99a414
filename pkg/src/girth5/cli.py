"""Command line front end.

Exit codes: 0 success, 1 validation or verification failure, 2 usage
error.  Usage errors are raised before any output file is created.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from . import __version__
from .bounds import (
    DEFAULT_NODE_BUDGET,
    degree_set_report,
    exact_max_size,
    moore_bound,
    verify_witness,
)
from .graph import Graph, GraphError
from .graph6 import ParseError, decode_graph6, encode_graph6
from .pipeline import (
    DEFAULT_ELL,
    DEFAULT_PASSES,
    RunConfig,
    compute_lower_bounds,
    read_bounds_csv,
    read_previous_csv,
    render_table,
)
from .search import SearchParams, local_search
from .store import DEFAULT_CAPACITY


def _read_g6_line(path, lineno):
    with open(path, "rb") as fh:
        lines = [ln.strip() for ln in fh]
    usable = [(i + 1, ln) for i, ln in enumerate(lines) if ln]
    for i, ln in usable:
        if i == lineno:
            return decode_graph6(ln)
    raise GraphError(f"{path}: no graph on line {lineno}")


def cmd_search(args, parser):
    if (args.order is None) == (args.seed_file is None):
        parser.error("give exactly one of --order or --seed-file")
    if args.deterministic and args.rng_seed is None:
        parser.error("--deterministic requires --rng-seed")
    if args.order is not None:
        seed = Graph(args.order, min_girth=args.min_girth)
    else:
        seed = _read_g6_line(args.seed_file, args.g6_line)
        seed.min_girth = args.min_girth
    n = seed.n
    params = SearchParams(
        total_num_iters=args.iters if args.iters is not None else 1000 * n,
        num_iters_too_recent=args.window if args.window is not None else max(1, n // 3),
        k_max=args.kmax,
        p=args.p,
        rng_seed=args.rng_seed,
    )
    result = local_search(seed, params, engine=args.engine)
    print(
        f"order={n} iterations={result.iterations_run} "
        f"best_size={result.best_size} snapshots={len(result.graphs)}"
    )
    if args.out:
        with open(args.out, "wb") as fh:
            for g in result.graphs:
                fh.write(encode_graph6(g) + b"\n")
        print(f"wrote {len(result.graphs)} graphs to {args.out}")
    return 0


_CONFIG_KEYS = {
    "n_low": int,
    "n_high": int,
    "seed_dir": str,
    "out_dir": str,
    "ell": int,
    "passes": int,
    "capacity": int,
    "master_seed": int,
    "threads": int,
    "engine": str,
    "early_stop": bool,
    "deterministic": bool,
    "previous": str,
}


def _load_config(path):
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise GraphError(f"{path}:{lineno}: expected key=value")
            key, _, val = line.partition("=")
            key = key.strip()
            val = val.strip()
            if key not in _CONFIG_KEYS:
                raise GraphError(f"{path}:{lineno}: unknown key {key!r}")
            caster = _CONFIG_KEYS[key]
            if caster is bool:
                low = val.lower()
                if low in ("1", "true", "yes", "on"):
                    values[key] = True
                elif low in ("0", "false", "no", "off"):
                    values[key] = False
                else:
                    raise GraphError(f"{path}:{lineno}: bad boolean {val!r}")
            else:
                try:
                    values[key] = caster(val)
                except ValueError:
                    raise GraphError(f"{path}:{lineno}: bad value {val!r} for {key}")
    return values


def cmd_run_range(args, parser):
    conf = {}
    if args.config:
        try:
            conf = _load_config(args.config)
        except OSError as exc:
            parser.error(str(exc))
        except GraphError as exc:
            parser.error(str(exc))

    def pick(name, default):
        cli = getattr(args, name)
        if cli is not None:
            return cli
        if name in conf:
            return conf[name]
        return default

    n_low = pick("n_low", None)
    n_high = pick("n_high", None)
    if n_low is None or n_high is None:
        parser.error("--n-low and --n-high are required (flag or config)")
    if n_high <= n_low:
        parser.error(f"need --n-high > --n-low, got {n_low}..{n_high}")
    out_dir = pick("out_dir", None)
    if out_dir is None:
        parser.error("--out-dir is required (flag or config)")
    seed_dir = pick("seed_dir", None)
    master_seed = pick("master_seed", None)
    threads = pick("threads", 1)
    deterministic = bool(pick("deterministic", False))
    if deterministic:
        if master_seed is None:
            parser.error("--deterministic requires an explicit --master-seed")
        if threads != 1:
            parser.error("--deterministic requires --threads 1")
    previous_path = pick("previous", None)
    previous = read_previous_csv(previous_path) if previous_path else None

    cfg = RunConfig(
        n_low=n_low,
        n_high=n_high,
        ell=pick("ell", DEFAULT_ELL),
        passes=pick("passes", DEFAULT_PASSES),
        capacity=pick("capacity", DEFAULT_CAPACITY),
        master_seed=master_seed if master_seed is not None else 0,
        threads=threads,
        engine=pick("engine", "auto"),
        early_stop=bool(pick("early_stop", False)),
    )
    try:
        cfg.validate()
    except GraphError as exc:
        parser.error(str(exc))
    table = compute_lower_bounds(
        cfg, seed_dir=seed_dir, out_dir=out_dir, previous=previous
    )
    print(render_table(table))
    print(f"snapshots and bounds.csv written to {out_dir}")
    return 0


def cmd_verify(args, parser):
    g = _read_g6_line(args.file, args.line)
    claimed_order = args.order if args.order is not None else g.n
    report = verify_witness(g, claimed_order, args.size, args.girth)
    print(
        f"order={report.order} ({'ok' if report.order_ok else 'MISMATCH'}) "
        f"size={report.size} ({'ok' if report.size_ok else 'MISMATCH'}) "
        f"girth>={report.girth_threshold} "
        f"({'ok' if report.girth_ok else 'VIOLATED'})"
    )
    print("verified" if report.ok else "verification failed")
    return 0 if report.ok else 1


def cmd_oracle(args, parser):
    budget = args.budget if args.budget is not None else DEFAULT_NODE_BUDGET
    record = exact_max_size(
        args.n, budget=budget, girth_threshold=args.girth, engine=args.engine
    )
    kind = "exact" if record.exact else "lower bound (node budget exhausted)"
    print(f"n={record.n} max_size={record.size} [{kind}] nodes={record.nodes}")
    print(f"witness: {encode_graph6(record.witness).decode('ascii')}")
    return 0 if record.exact else 1


def cmd_moore(args, parser):
    print(moore_bound(args.k, args.g))
    return 0


def cmd_encode(args, parser):
    with open(args.edges) as fh:
        tokens = []
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if line:
                tokens.extend(line.split())
    if not tokens:
        raise GraphError(f"{args.edges}: empty edge list file")
    ints = [int(t) for t in tokens]
    n, rest = ints[0], ints[1:]
    if len(rest) % 2:
        raise GraphError(f"{args.edges}: odd number of endpoints")
    edges = list(zip(rest[::2], rest[1::2]))
    g = Graph(n, edges)
    out = encode_graph6(g)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(out + b"\n")
    else:
        print(out.decode("ascii"))
    return 0


def cmd_decode(args, parser):
    g = _read_g6_line(args.file, args.line)
    print(f"n={g.n} m={g.edge_count}")
    for u, v in g.edges():
        print(u, v)
    return 0


def cmd_report(args, parser):
    table = read_bounds_csv(args.bounds)
    if args.previous:
        table.previous.update(read_previous_csv(args.previous))
    print(render_table(table))
    if args.out:
        from .pipeline import write_bounds_csv

        write_bounds_csv(table, args.out)
    return 0


def cmd_degree_sets(args, parser):
    if not os.path.isdir(args.dir):
        raise GraphError(f"not a directory: {args.dir}")
    rows = []
    for name in sorted(os.listdir(args.dir)):
        if not name.endswith(".g6"):
            continue
        path = os.path.join(args.dir, name)
        with open(path, "rb") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line:
                    continue
                try:
                    g = decode_graph6(line)
                except ParseError as exc:
                    raise GraphError(f"{path}:{lineno}: {exc}") from exc
                rep = degree_set_report(g)
                candidate = rep.bi_regular and rep.girth == 5
                if candidate or args.all:
                    rows.append(
                        (
                            name,
                            lineno,
                            rep.order,
                            rep.size,
                            ",".join(str(d) for d in rep.degree_set),
                            "-" if rep.girth is None else str(rep.girth),
                            "yes" if candidate else "no",
                        )
                    )
    header = ("file", "line", "n", "size", "degrees", "girth", "candidate")
    widths = [
        max(len(str(header[c])), *(len(str(r[c])) for r in rows)) if rows else len(header[c])
        for c in range(len(header))
    ]
    print("  ".join(str(h).ljust(w) for h, w in zip(header, widths)).rstrip())
    for r in rows:
        print("  ".join(str(x).ljust(w) for x, w in zip(r, widths)).rstrip())
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="girth5",
        description="Search for graphs of girth >= 5 with as many edges as possible.",
    )
    parser.add_argument("--version", action="version", version=f"girth5 {__version__}")
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="log pipeline progress"
    )
    sub = parser.add_subparsers(dest="cmd", required=True, metavar="command")

    p = sub.add_parser("search", help="run one local search from a seed graph")
    p.add_argument("--order", type=int, help="start from the edgeless graph of this order")
    p.add_argument("--seed-file", help="start from a graph6 line in this file")
    p.add_argument("--g6-line", type=int, default=1, help="line number in --seed-file")
    p.add_argument("--iters", type=int, help="iteration budget (default 1000*n)")
    p.add_argument("--window", type=int, help="deletion cooldown window (default n//3)")
    p.add_argument("--kmax", type=int, default=3, help="max deletions per iteration")
    p.add_argument("--p", type=float, default=0.5, help="greedy fill probability")
    p.add_argument("--rng-seed", type=int, help="RNG seed (omit for entropy)")
    p.add_argument("--min-girth", type=int, default=5)
    p.add_argument("--engine", choices=("auto", "python", "fast"), default="auto")
    p.add_argument("--deterministic", action="store_true")
    p.add_argument("--out", help="write snapshot graphs here as graph6 lines")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("run-range", help="run the up/down pipeline over an order range")
    p.add_argument("--n-low", type=int)
    p.add_argument("--n-high", type=int)
    p.add_argument("--seed-dir", help="directory of .g6 seed files")
    p.add_argument("--out-dir", help="directory for snapshots and bounds.csv")
    p.add_argument("--ell", type=int, help=f"seeds per order per phase (default {DEFAULT_ELL})")
    p.add_argument("--passes", type=int, help=f"up+down passes (default {DEFAULT_PASSES})")
    p.add_argument("--capacity", type=int, help=f"store capacity per order (default {DEFAULT_CAPACITY})")
    p.add_argument("--master-seed", type=int, help="root seed for all task RNG streams")
    p.add_argument("--threads", type=int, help="worker processes (default 1)")
    p.add_argument("--engine", choices=("auto", "python", "fast"))
    p.add_argument("--early-stop", action="store_true", default=None,
                   help="stop after a pass with no improvement")
    p.add_argument("--deterministic", action="store_true", default=None,
                   help="require a reproducible configuration")
    p.add_argument("--previous", help="CSV of previously known sizes (n,size)")
    p.add_argument("--config", help="key=value file; command line flags win")
    p.set_defaults(func=cmd_run_range)

    p = sub.add_parser("verify", help="check an order/size/girth claim for a graph6 line")
    p.add_argument("--file", required=True)
    p.add_argument("--line", type=int, default=1)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--order", type=int)
    p.add_argument("--girth", type=int, default=5)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="prove the maximum size for one order")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--girth", type=int, default=5)
    p.add_argument("--engine", choices=("auto", "python", "fast"), default="auto")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("moore", help="minimum order of a k-regular graph of girth g")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.set_defaults(func=cmd_moore)

    p = sub.add_parser("encode", help="edge list file to graph6")
    p.add_argument("--edges", required=True, help="file: order, then u v pairs")
    p.add_argument("--out")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="graph6 line to edge list")
    p.add_argument("--file", required=True)
    p.add_argument("--line", type=int, default=1)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("report", help="render a bounds.csv, optionally merging previous sizes")
    p.add_argument("--bounds", required=True)
    p.add_argument("--previous")
    p.add_argument("--out", help="write the merged CSV here")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("degree-sets", help="scan snapshot graphs for bi-regular girth-5 candidates")
    p.add_argument("--dir", required=True)
    p.add_argument("--all", action="store_true", help="list every graph, not just candidates")
    p.set_defaults(func=cmd_degree_sets)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args, parser)
    except (GraphError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
