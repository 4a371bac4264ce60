"""Command-line front end.

    nibblecolor generate complete-bipartite --m 3 --out k33.col
    nibblecolor run --graph k33.col --k 1.5 --seed 4 --trace trace.jsonl
    nibblecolor sweep --graph g.col --k 2 --seeds 0..20 --parallelism 8
    nibblecolor baseline --graph g.col
    nibblecolor verify --graph g.col --coloring colors.txt
    nibblecolor schedule --delta 1000 --k 2 --csv sched.csv

Exit codes: 0 proper coloring produced and verified, 2 bad input or
parameters, 3 greedy stage stuck, 4 any other run failure.
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import dimacs
from .diagnostics import write_jsonl
from .engine import RunConfig, colors_for, run
from .graph import (Coloring, IncompleteColoringError, gen_complete_bipartite,
                    gen_random_bipartite, gen_random_triangle_free, is_triangle_free,
                    verify_proper)
from .harness import greedy_baseline_colors, sweep, write_summary_csv
from .schedule import ScheduleError, ScheduleParams, build_schedule, write_csv

EXIT_OK, EXIT_USAGE, EXIT_STUCK, EXIT_FAIL = 0, 2, 3, 4


class UsageError(Exception):
    pass


def parse_seed_range(text):
    """``A..B`` is the half-open range ``[A, B)``."""
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    if hi <= lo:
        raise argparse.ArgumentTypeError("seed range is empty")
    return range(lo, hi)


def _load(path):
    try:
        return dimacs.read(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except dimacs.DimacsError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _config(args, g):
    delta = g.max_degree
    if args.colors is not None:
        num, k = args.colors, None
    elif args.k is not None:
        num, k = colors_for(delta, args.k), args.k
    else:
        raise UsageError("either --k or --colors is required")
    if num < 1:
        raise UsageError(f"floor(Delta/k) = {num}; need at least one color")
    if args.q < 2:
        raise UsageError("--q must be at least 2")
    return RunConfig(num_colors=num, k=k, q=args.q, seed=args.seed,
                     strict_regime=args.strict_regime,
                     triangle_check=not args.no_triangle_check)


def _write(path, text):
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from exc


def cmd_generate(args):
    if args.kind == "complete-bipartite":
        g = gen_complete_bipartite(args.m)
    elif args.kind == "random-bipartite":
        g = gen_random_bipartite(args.n_per_side, args.p, args.seed)
    else:
        g = gen_random_triangle_free(args.n, args.target_degree, args.seed)
    _write(args.out, dimacs.dumps(g))
    print(f"n={g.n} m={g.m} max_degree={g.max_degree} triangle_free={is_triangle_free(g)}")
    return EXIT_OK


def cmd_run(args):
    g = _load(args.graph)
    cfg = _config(args, g)
    cfg.diagnostics = args.trace is not None
    if args.schedule_csv:
        write_csv(build_schedule(cfg.schedule_params(g)), args.schedule_csv)
    rep = run(g, cfg)
    if args.trace:
        write_jsonl(rep.traces, args.trace)
    if args.coloring_out and rep.success:
        _write(args.coloring_out, "".join(f"{c}\n" for c in rep.coloring.assignment.tolist()))
    print(json.dumps(rep.to_dict(), sort_keys=True))
    if rep.success:
        return EXIT_OK
    print(f"failure: {rep.outcome.reason}", file=sys.stderr)
    return EXIT_STUCK if rep.outcome.reason == "greedy_stuck" else EXIT_FAIL


def cmd_sweep(args):
    g = _load(args.graph)
    cfg = _config(args, g)
    if args.seeds is not None:
        seeds = args.seeds
    else:
        seeds = range(args.seed, args.seed + args.trials)
    summary = sweep(g, cfg, seeds, parallelism=args.parallelism)
    if args.summary:
        write_summary_csv(summary, args.summary)
    print(json.dumps(summary.as_dict(), sort_keys=True))
    return EXIT_OK


def cmd_baseline(args):
    g = _load(args.graph)
    print(greedy_baseline_colors(g))
    return EXIT_OK


def cmd_verify(args):
    g = _load(args.graph)
    try:
        colors = np.loadtxt(args.coloring, dtype=np.int64, ndmin=1)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read coloring {args.coloring}: {exc}") from exc
    if len(colors) != g.n:
        raise UsageError(f"coloring has {len(colors)} entries, graph has {g.n} vertices")
    try:
        bad = verify_proper(g, Coloring(colors, int(colors.max()) + 1 if g.n else 1))
    except IncompleteColoringError as exc:
        print(f"incomplete coloring: {exc}", file=sys.stderr)
        return EXIT_FAIL
    for u, v in bad:
        print(f"conflict {u + 1} {v + 1}")
    return EXIT_OK if not bad else EXIT_FAIL


def cmd_schedule(args):
    try:
        p = ScheduleParams(delta=args.delta, k=args.k, q=args.q, psi=args.psi)
        sched = build_schedule(p)
    except ScheduleError as exc:
        raise UsageError(str(exc)) from exc
    write_csv(sched, args.csv)
    print(f"t1={sched.t1} t2={sched.t2} tau={sched.tau}")
    return EXIT_OK


def _run_flags(p):
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=float)
    p.add_argument("--colors", type=int, help="overrides --k")
    p.add_argument("--q", type=float, default=7.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strict-regime", action="store_true")
    p.add_argument("--no-triangle-check", action="store_true")


def build_parser():
    ap = argparse.ArgumentParser(prog="nibblecolor")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate")
    p.add_argument("kind", choices=["complete-bipartite", "random-bipartite",
                                    "random-triangle-free"])
    p.add_argument("--out", required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--n-per-side", type=int, default=1)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--target-degree", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("run")
    _run_flags(p)
    p.add_argument("--trace")
    p.add_argument("--schedule-csv")
    p.add_argument("--coloring-out")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep")
    _run_flags(p)
    p.add_argument("--seeds", type=parse_seed_range)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--summary")
    p.add_argument("--parallelism", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("baseline")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("verify")
    p.add_argument("--graph", required=True)
    p.add_argument("--coloring", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("schedule")
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--q", type=float, default=7.0)
    p.add_argument("--psi", type=float, default=3.0)
    p.add_argument("--csv", required=True)
    p.set_defaults(func=cmd_schedule)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
