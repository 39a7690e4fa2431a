"""Command-line interface: ``kforest solve|verify|oracle|generate|bench``.

Exit codes: 0 success, 1 verification failure, 2 input error,
3 internal invariant error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import generators
from .errors import GenerationError, InputError, InvariantError
from .exact import partition_opt_certificate, solve_kforest
from .formats import format_graph, format_solution, parse_graph, parse_solution
from .solver import forests, verify_solution

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3

log = logging.getLogger("kforest")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_solve(args) -> int:
    g, k = parse_graph(_read(args.input))
    t0 = time.perf_counter()
    fam, stats = forests(g, k)
    elapsed = time.perf_counter() - t0
    _write(args.out, format_solution(fam))
    if args.stats:
        doc = stats.to_dict()
        doc["seconds"] = round(elapsed, 6)
        Path(args.stats).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    log.info("size %d in %d rounds (%.3fs)", stats.size, stats.iteration_count, elapsed)
    return EXIT_OK


def cmd_verify(args) -> int:
    g, k = parse_graph(_read(args.graph))
    pairs = parse_solution(_read(args.solution))
    oracle = args.oracle if args.check_optimal else None
    report = verify_solution(g, pairs, k, oracle=oracle)
    for failure in report.failures:
        print(f"FAIL {failure}")
    if report.ok:
        extra = f" (optimum {report.optimum})" if report.optimum is not None else ""
        print(f"OK size {report.size}{extra}")
        return EXIT_OK
    return EXIT_VERIFY


def cmd_oracle(args) -> int:
    g, k = parse_graph(_read(args.input))
    if args.method == "partition":
        value, parts = partition_opt_certificate(g, k)
        print(value)
        print("partition " + " | ".join(" ".join(str(v + 1) for v in p) for p in parts))
    else:
        print(len(solve_kforest(g, k)))
    return EXIT_OK


def _make(model: str, n: int, k: int, seed: int, m: int | None, edge_factor: int):
    if model == "gnm":
        return generators.gnm(n, m if m is not None else edge_factor * n, seed)
    return generators.ktrees(n, k, seed)


def cmd_generate(args) -> int:
    g = _make(args.model, args.n, args.k, args.seed, args.m, args.edge_factor)
    note = f"{args.model} n={args.n} k={args.k} seed={args.seed}"
    _write(args.out, format_graph(g, args.k, comments=[note]))
    return EXIT_OK


def _bench_row(model: str, n: int, k: int, seed: int, edge_factor: int) -> dict:
    g = _make(model, n, k, seed, None, edge_factor)
    t0 = time.perf_counter()
    fam, stats = forests(g, k)
    elapsed = time.perf_counter() - t0
    return {
        "model": model,
        "n": n,
        "m": g.m,
        "k": k,
        "seed": seed,
        "size": len(fam),
        "iterations": stats.iteration_count,
        "iteration_cap": stats.iteration_cap,
        "flow_calls": stats.flow_calls,
        "seconds": f"{elapsed:.4f}",
    }


def cmd_bench(args) -> int:
    sizes = [int(x) for x in args.sizes.split(",") if x]
    tasks = [(args.model, n, args.k, args.seed + r, args.edge_factor) for n in sizes for r in range(args.repeat)]
    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        rows = list(pool.map(lambda t: _bench_row(*t), tasks))
    out = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    try:
        writer = csv.DictWriter(out, fieldnames=list(rows[0]) if rows else ["model"])
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kforest", description="Exact k edge-disjoint forests.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a graph file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True, help="solution file ('-' for stdout)")
    p.add_argument("--stats", help="write solve statistics as JSON")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a solution file")
    p.add_argument("--graph", required=True)
    p.add_argument("--solution", required=True)
    p.add_argument("--check-optimal", action="store_true")
    p.add_argument("--oracle", choices=["augment", "partition"], default="augment")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="print the optimal value")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--method", choices=["partition", "augment"], default="augment")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("generate", help="write a random graph file")
    p.add_argument("--model", choices=["gnm", "ktrees"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--edge-factor", type=int, default=4, help="gnm edges per vertex when --m is absent")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="CSV of size, rounds and wall time over instance sizes")
    p.add_argument("--model", choices=["gnm", "ktrees"], default="gnm")
    p.add_argument("--sizes", required=True, help="comma-separated vertex counts")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--edge-factor", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeat", type=int, default=1)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (InputError, GenerationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
