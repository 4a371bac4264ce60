"""Randomized O(Delta / log Delta) coloring of triangle-free graphs."""

from .diagnostics import RoundTrace, bipartite_dispersion_check, snapshot
from .engine import (ColoringState, GreedyStuckError, RoundOutcome, RunConfig, RunReport,
                     greedy_complete, init_state, run, run_round)
from .graph import (Coloring, Graph, gen_complete_bipartite, gen_random_bipartite,
                    gen_random_triangle_free, is_triangle_free, verify_proper)
from .harness import SweepSummary, greedy_baseline_colors, sweep
from .lemmas import padded_mean, trimmed_mean_bound
from .schedule import (Schedule, ScheduleParams, assignment_prob, build_schedule,
                       decay_constants, desired_survival, error_envelope, failure_floor)

__all__ = [
    "Coloring", "ColoringState", "Graph", "GreedyStuckError", "RoundOutcome", "RoundTrace",
    "RunConfig", "RunReport", "Schedule", "ScheduleParams", "SweepSummary",
    "assignment_prob", "bipartite_dispersion_check", "build_schedule", "decay_constants",
    "desired_survival", "error_envelope", "failure_floor", "gen_complete_bipartite",
    "gen_random_bipartite", "gen_random_triangle_free", "greedy_baseline_colors",
    "greedy_complete", "init_state", "is_triangle_free", "padded_mean", "run", "run_round",
    "snapshot", "sweep", "trimmed_mean_bound", "verify_proper",
]
