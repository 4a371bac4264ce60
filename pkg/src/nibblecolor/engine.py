"""Three-stage randomized coloring of triangle-free graphs.

Each round of the first two stages runs three synchronous phases:

I.   every uncolored vertex tentatively takes each palette color independently
     with the schedule's assignment probability;
II.  colors taken by a neighbor are dropped, an equalizing coin drops each
     remaining color so its survival probability matches the schedule, and a
     vertex keeping one of its own tentative colors is colored permanently;
III. colors whose conflict count is far above the schedule's average are
     dropped (a Markov-inequality cleanup).

All counter updates are applied after every vertex has decided, so a phase
only ever reads the state left by the previous phase.
"""

import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import rng as _rng
from .graph import Coloring, NotTriangleFreeError, find_triangle, verify_proper
from .schedule import NonTerminationError, ScheduleError, ScheduleParams, build_schedule

GAMMA_GUARD = 1e-12


class StrictRegimeError(RuntimeError):
    """Raised when the assignment probability had to be capped at 1."""


class GreedyStuckError(RuntimeError):
    def __init__(self, vertex):
        self.vertex = int(vertex)
        super().__init__(f"no admissible palette color at vertex {self.vertex}")


def colors_for(delta, k):
    """``floor(delta / k)``, tolerant of binary round-off in the quotient."""
    return int(math.floor(delta / k + 1e-9))


@dataclass
class RunConfig:
    num_colors: int
    k: float = None
    q: float = 7.0
    seed: int = 0
    max_rounds: int = None
    diagnostics: bool = False
    strict_regime: bool = False
    triangle_check: bool = True
    check_invariants: bool = False
    psi: float = None
    alpha1: float = 1.0
    alpha2: float = 1.0

    def __post_init__(self):
        if self.num_colors < 1:
            raise ValueError("num_colors must be at least 1")
        if self.q < 2:
            raise ValueError("q must be at least 2")

    @classmethod
    def from_k(cls, delta, k, **kw):
        return cls(num_colors=colors_for(delta, k), k=k, **kw)

    def schedule_params(self, g):
        delta = max(g.max_degree, 1)
        k = self.k if self.k is not None else delta / self.num_colors
        extra = {"alpha1": self.alpha1, "alpha2": self.alpha2}
        if self.psi is not None:
            extra["psi"] = self.psi
        return ScheduleParams.for_graph(g.n, delta, k, q=self.q, **extra)


class ColoringState:
    """Mutable per-trial state.

    ``palette`` is an ``(n, C)`` boolean matrix; colored vertices have empty
    rows. ``dcount[u, c]`` is the number of uncolored neighbors of ``u`` with
    ``c`` in their palette, kept for every ``(u, c)`` so that it always equals
    ``A @ palette``.
    """

    def __init__(self, g, num_colors):
        self.graph = g
        self.num_colors = num_colors
        self.color = np.full(g.n, -1, dtype=np.int64)
        self.palette = np.ones((g.n, num_colors), dtype=bool)
        self.dcount = np.repeat(g.degrees.astype(np.int64)[:, None], num_colors, axis=1)
        self.uncolored_degree = g.degrees.astype(np.int64).copy()
        self.round = 0

    @property
    def uncolored(self):
        return self.color < 0

    @property
    def palette_size(self):
        return self.palette.sum(axis=1)

    def is_active(self):
        """True while some uncolored vertex still has a color to try."""
        return bool(np.any(self.palette[self.uncolored]))

    def recount(self):
        a = self.graph.adjacency
        return a @ self.palette.astype(np.int64), a @ self.uncolored.astype(np.int64)

    def check_consistency(self):
        dcount, udeg = self.recount()
        if not np.array_equal(dcount, self.dcount):
            raise AssertionError("dcount drifted from recount")
        if not np.array_equal(udeg, self.uncolored_degree):
            raise AssertionError("uncolored_degree drifted from recount")
        if self.palette[~self.uncolored].any():
            raise AssertionError("colored vertex with non-empty palette")

    def copy(self):
        other = object.__new__(ColoringState)
        other.__dict__.update(self.__dict__)
        for name in ("color", "palette", "dcount", "uncolored_degree"):
            setattr(other, name, getattr(self, name).copy())
        return other

    def _apply_removals(self, removed):
        """Drop ``removed`` palette entries and update neighbor counts."""
        self.palette &= ~removed
        self.dcount -= self.graph.adjacency @ removed.astype(np.int64)


@dataclass
class RoundOutcome:
    newly_colored: int = 0
    palette_removals_phase2_1: int = 0
    palette_removals_phase2_2: int = 0
    palette_removals_phase3: int = 0
    clamped_probabilities: bool = False
    cleanup_threshold: np.ndarray = field(default=None, repr=False, compare=False)

    def merge(self, other):
        for name in ("newly_colored", "palette_removals_phase2_1",
                     "palette_removals_phase2_2", "palette_removals_phase3"):
            setattr(self, name, getattr(self, name) + getattr(other, name))
        self.clamped_probabilities |= other.clamped_probabilities
        if other.cleanup_threshold is not None:
            self.cleanup_threshold = other.cleanup_threshold
        return self


def init_state(g, cfg):
    if cfg.triangle_check:
        tri = find_triangle(g)
        if tri is not None:
            raise NotTriangleFreeError(tri)
    return ColoringState(g, cfg.num_colors)


def survival_probability(state, u, c, p_t):
    """Chance that no neighbor of ``u`` tentatively takes ``c`` this round."""
    return (1.0 - p_t) ** int(state.dcount[u, c])


def phase_assign(state, p_t, rng):
    if p_t <= 0:
        return np.zeros_like(state.palette)
    draws = rng.grid(state.round, _rng.ASSIGN, *state.palette.shape)
    return state.palette & (draws < p_t)


def removal_probability(desired, survival):
    # survival == 0 only when p_t == 1; the ratio is then unbounded
    with np.errstate(divide="ignore"):
        ratio = np.where(survival > 0, desired / np.where(survival > 0, survival, 1.0), np.inf)
    return 1.0 - np.minimum(1.0, ratio)


def phase_conflict(state, tentative, desired, p_t, rng, check=False):
    a = state.graph.adjacency
    before = state.palette.copy()
    survival = (1.0 - p_t) ** state.dcount  # frozen at round start

    neighbor_took = (a @ tentative.astype(np.int64)) > 0
    drop1 = before & neighbor_took
    pal = before & ~neighbor_took

    draws = rng.grid(state.round, _rng.COIN, *pal.shape)
    drop2 = pal & (draws < removal_probability(desired, survival))
    pal &= ~drop2

    kept_own = pal & tentative
    winners = np.flatnonzero(kept_own.any(axis=1))
    chosen = np.argmax(kept_own[winners], axis=1)
    if check and winners.size:
        _check_fresh_colors(state, tentative, winners, chosen)
    pal[winners] = False

    state._apply_removals(before & ~pal)
    state.color[winners] = chosen
    if winners.size:
        newly = np.zeros(state.graph.n, dtype=np.int64)
        newly[winners] = 1
        state.uncolored_degree -= a @ newly
    return RoundOutcome(newly_colored=int(winners.size),
                        palette_removals_phase2_1=int(drop1.sum()),
                        palette_removals_phase2_2=int(drop2.sum()))


def _check_fresh_colors(state, tentative, winners, chosen):
    g = state.graph
    for u, c in zip(winners.tolist(), chosen.tolist()):
        nb = g.neighbors(u)
        if tentative[nb, c].any():
            raise AssertionError(f"vertex {u} colored {c} while a neighbor took it")
        if np.any(state.color[nb] == c):
            raise AssertionError(f"vertex {u} colored {c} already held by a neighbor")


def cleanup_thresholds(state, d_next, s_next, q):
    """Per-vertex removal threshold ``q * gamma * d_next`` (``inf`` = keep all)."""
    size = state.palette_size
    alpha = np.clip(1.0 - size / s_next, 0.0, 1.0 / q)
    total = np.where(state.palette, state.dcount, 0).sum(axis=1)
    avg = np.divide(total, size, out=np.zeros(len(size)), where=size > 0)
    denom = 1.0 - q * alpha
    safe = denom > GAMMA_GUARD
    gamma = np.full(len(size), np.inf)
    gamma[safe] = np.maximum(1.0, avg[safe] * (1.0 - alpha[safe]) / (denom[safe] * d_next))
    return q * gamma * d_next


def phase_cleanup(state, d_next, s_next, q):
    threshold = cleanup_thresholds(state, d_next, s_next, q)
    drop = state.palette & (state.dcount >= threshold[:, None])
    state._apply_removals(drop)
    assert_cleanup_postcondition(state, threshold)
    return RoundOutcome(palette_removals_phase3=int(drop.sum()), cleanup_threshold=threshold)


def assert_cleanup_postcondition(state, threshold):
    bad = state.palette & (state.dcount >= threshold[:, None])
    if bad.any():
        u, c = np.argwhere(bad)[0]
        raise AssertionError(f"color {c} at vertex {u} survived cleanup above threshold")


def run_round(state, sched, t, rng, strict=False, check=False):
    if not 0 <= t < sched.tau:
        raise ScheduleError(f"round {t} outside [0, {sched.tau})")
    clamped = bool(sched.clamped[t])
    if clamped and strict:
        raise StrictRegimeError(f"assignment probability capped at 1 in round {t}")
    state.round = t
    p_t = float(sched.assign_prob[t])
    desired = float(sched.desired_survival[t])

    tentative = phase_assign(state, p_t, rng)
    out = RoundOutcome(clamped_probabilities=clamped)
    out.merge(phase_conflict(state, tentative, desired, p_t, rng, check=check))
    if check:
        state.check_consistency()
    out.merge(phase_cleanup(state, sched.d[t + 1], sched.s[t + 1], sched.params.q))
    if check:
        state.check_consistency()
    state.round = t + 1
    return out


def greedy_complete(state, g=None):
    """Give each uncolored vertex, in id order, its smallest admissible palette color."""
    g = state.graph if g is None else g
    color = state.color.copy()
    for u in np.flatnonzero(color < 0).tolist():
        taken = set(color[g.neighbors(u)].tolist())
        for c in np.flatnonzero(state.palette[u]).tolist():
            if c not in taken:
                color[u] = c
                break
        else:
            raise GreedyStuckError(u)
    return Coloring(color, state.num_colors)


@dataclass
class Outcome:
    success: bool
    reason: str = None
    stage: int = None
    round: int = None
    vertex: int = None


@dataclass
class RunReport:
    outcome: Outcome
    rounds_used: int
    colors_used: int
    num_colors: int
    t1: int = None
    tau: int = None
    coloring: Coloring = field(default=None, repr=False)
    traces: list = field(default_factory=list, repr=False)
    outcomes: list = field(default_factory=list, repr=False)
    wall_ms: float = field(default=0.0, compare=False)

    @property
    def success(self):
        return self.outcome.success

    def to_dict(self, timing=False):
        """Deterministic summary; wall time only when ``timing`` is set."""
        d = {
            "outcome": asdict(self.outcome),
            "rounds_used": self.rounds_used,
            "colors_used": self.colors_used,
            "num_colors": self.num_colors,
            "t1": self.t1,
            "tau": self.tau,
        }
        if timing:
            d["wall_ms"] = self.wall_ms
        return d


def _stage_of(sched, t):
    return int(sched.stage[t]) if sched is not None and t < len(sched) else None


def run(g, cfg):
    """Run all three stages; failures come back in ``RunReport.outcome``."""
    from .diagnostics import snapshot

    start = time.perf_counter()
    sched = None
    t = 0
    traces, outcomes = [], []

    def report(outcome, coloring=None):
        used = coloring.colors_used if coloring is not None else 0
        return RunReport(outcome, t, used, cfg.num_colors,
                         t1=None if sched is None else sched.t1,
                         tau=None if sched is None else sched.tau,
                         coloring=coloring, traces=traces, outcomes=outcomes,
                         wall_ms=(time.perf_counter() - start) * 1e3)

    try:
        sched = build_schedule(cfg.schedule_params(g))
    except (ScheduleError, NonTerminationError) as exc:
        return report(Outcome(False, f"invalid_schedule: {exc}", stage=0))
    try:
        state = init_state(g, cfg)
    except NotTriangleFreeError as exc:
        return report(Outcome(False, "not_triangle_free", stage=0, vertex=exc.triple[0]))

    rng = _rng.CounterRNG(cfg.seed)
    limit = sched.tau if cfg.max_rounds is None else min(sched.tau, cfg.max_rounds)
    while t < limit and state.is_active():
        if cfg.diagnostics:
            traces.append(snapshot(state, sched, t))
        try:
            outcomes.append(run_round(state, sched, t, rng, strict=cfg.strict_regime,
                                      check=cfg.check_invariants))
        except StrictRegimeError:
            return report(Outcome(False, "strict_regime", stage=_stage_of(sched, t), round=t))
        t += 1
    if t < sched.tau and state.is_active():
        return report(Outcome(False, "round_cap", stage=_stage_of(sched, t), round=t))

    try:
        coloring = greedy_complete(state, g)
    except GreedyStuckError as exc:
        return report(Outcome(False, "greedy_stuck", stage=3, round=t, vertex=exc.vertex))
    bad = verify_proper(g, coloring)
    if bad:
        raise AssertionError(f"improper coloring produced: {bad[:5]}")
    return report(Outcome(True), coloring)
