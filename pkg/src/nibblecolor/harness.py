"""Seeded Monte Carlo sweeps and the greedy Delta+1 baseline."""

import csv
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .engine import run


def greedy_baseline(g):
    """Sequential first-fit coloring in vertex order; never more than Delta+1 colors."""
    color = np.full(g.n, -1, dtype=np.int64)
    for u in range(g.n):
        taken = set(color[g.neighbors(u)].tolist())
        c = 0
        while c in taken:
            c += 1
        color[u] = c
    return color


def greedy_baseline_colors(g):
    color = greedy_baseline(g)
    return int(color.max()) + 1 if g.n else 0


@dataclass
class TrialResult:
    seed: int
    outcome: str
    rounds: int
    colors_used: int
    greedy_baseline: int
    wall_ms: float = field(default=0.0, compare=False)


@dataclass
class SweepSummary:
    trials: int
    successes: int
    mean_rounds: float
    min_rounds: int
    max_rounds: int
    mean_colors_used: float
    greedy_baseline: int
    num_colors: int
    seeds: list
    results: list = field(default_factory=list, repr=False)

    @property
    def success_rate(self):
        return self.successes / self.trials

    def as_dict(self):
        return {k: v for k, v in self.__dict__.items() if k != "results"}


def _trial(args):
    g, cfg, baseline = args
    rep = run(g, cfg)
    label = "success" if rep.success else rep.outcome.reason
    return TrialResult(cfg.seed, label, rep.rounds_used, rep.colors_used, baseline, rep.wall_ms)


def summarize(results, num_colors, baseline):
    if not results:
        raise ValueError("a sweep needs at least one trial")
    rounds = [r.rounds for r in results]
    ok = [r for r in results if r.outcome == "success"]
    return SweepSummary(
        trials=len(results),
        successes=len(ok),
        mean_rounds=statistics.fmean(rounds),
        min_rounds=min(rounds),
        max_rounds=max(rounds),
        mean_colors_used=statistics.fmean(r.colors_used for r in ok) if ok else 0.0,
        greedy_baseline=baseline,
        num_colors=num_colors,
        seeds=[r.seed for r in results],
        results=list(results),
    )


def sweep(g, cfg, seeds, parallelism=1):
    """One independent trial per seed; the summary does not depend on ``parallelism``."""
    seeds = list(seeds)
    if not seeds:
        raise ValueError("a sweep needs at least one seed")
    baseline = greedy_baseline_colors(g)
    jobs = [(g, replace(cfg, seed=s, diagnostics=False), baseline) for s in seeds]
    if parallelism > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            results = list(pool.map(_trial, jobs))
    else:
        results = [_trial(j) for j in jobs]
    return summarize(results, cfg.num_colors, baseline)


SUMMARY_COLUMNS = ("seed", "outcome", "rounds", "colors_used", "greedy_baseline", "wall_ms")


def write_summary_csv(summary, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SUMMARY_COLUMNS)
        for r in summary.results:
            w.writerow([r.seed, r.outcome, r.rounds, r.colors_used, r.greedy_baseline,
                        f"{r.wall_ms:.3f}"])
