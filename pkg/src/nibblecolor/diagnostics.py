"""Per-round comparison of a running state against the idealized schedule."""

import json
from dataclasses import asdict, dataclass, field

import numpy as np

PALETTE, AVG_DCOUNT, ETA, DCOUNT = "palette", "avg_dcount", "eta", "dcount"


@dataclass
class RoundTrace:
    t: int
    eta_ideal: float
    d_ideal: float
    s_ideal: float
    max_eta_ratio: float
    min_palette_ratio: float
    max_avg_dcount_ratio: float
    max_dcount_ratio: float
    envelope: float
    uncolored: int
    violations: list = field(default_factory=list)

    def to_json(self):
        d = asdict(self)
        d["violations"] = [list(v) for v in self.violations]
        return json.dumps(d, separators=(",", ":"))

    @property
    def violation_fraction(self):
        if self.uncolored == 0:
            return 0.0
        return len({u for u, _ in self.violations}) / self.uncolored


def snapshot(state, sched, t):
    """Scan the state at the start of round ``t``; never mutates it.

    A vertex violates an inequality when its palette is smaller than
    ``(q-1)/q * s_t * (1 - e_t)``, its mean conflict count exceeds
    ``d_t (1 + e_t)``, its uncolored degree exceeds ``eta_t (1 + e_t)``, or
    one of its colors has a conflict count above ``q d_t (1 + e_t)``. Ratio
    extremes are 0 when no vertex is uncolored.
    """
    q = sched.params.q
    eta, d, s, e = (float(sched.eta[t]), float(sched.d[t]),
                    float(sched.s[t]), float(sched.envelope[t]))
    live = np.flatnonzero(state.uncolored)
    pal = state.palette[live]
    size = pal.sum(axis=1)
    dc = np.where(pal, state.dcount[live], 0)
    avg = np.divide(dc.sum(axis=1), size, out=np.zeros(len(live)), where=size > 0)
    top = dc.max(axis=1) if state.num_colors else np.zeros(len(live))
    udeg = state.uncolored_degree[live]

    floor_s = (q - 1) / q * s
    checks = (
        (PALETTE, size < floor_s * (1 - e)),
        (AVG_DCOUNT, avg > d * (1 + e)),
        (ETA, udeg > eta * (1 + e)),
        (DCOUNT, top > q * d * (1 + e)),
    )
    violations = []
    for i, u in enumerate(live.tolist()):
        for name, flags in checks:
            if flags[i]:
                violations.append((u, name))

    def extreme(fn, x):
        return float(fn(x)) if len(live) else 0.0

    return RoundTrace(
        t=t, eta_ideal=eta, d_ideal=d, s_ideal=s,
        max_eta_ratio=extreme(np.max, udeg / eta),
        min_palette_ratio=extreme(np.min, size / floor_s),
        max_avg_dcount_ratio=extreme(np.max, avg / d),
        max_dcount_ratio=extreme(np.max, top / (q * d)),
        envelope=e, uncolored=int(len(live)), violations=violations,
    )


def write_jsonl(traces, path):
    with open(path, "w") as fh:
        for tr in traces:
            fh.write(tr.to_json() + "\n")


def read_jsonl(path):
    out = []
    with open(path) as fh:
        for line in fh:
            d = json.loads(line)
            d["violations"] = [tuple(v) for v in d["violations"]]
            out.append(RoundTrace(**d))
    return out


@dataclass
class DispersionReport:
    present: bool
    skipped: bool = False
    witness: tuple = None
    d_next: float = 0.0


def bipartite_dispersion_check(state, d_next):
    """Look for an uncolored ``u`` keeping a color ``c`` with no competing neighbor.

    On ``K_{D,D}`` a single vertex colored in round 0 wipes that color from the
    whole opposite side, leaving ``dcount(u, c) = 0`` on its own side while the
    schedule still expects ``d_1 >= 1``.
    """
    if state.num_colors < 2:
        return DispersionReport(present=False, skipped=True, d_next=d_next)
    if d_next < 1:
        return DispersionReport(present=False, d_next=d_next)
    hit = state.palette & (state.dcount == 0) & state.uncolored[:, None]
    found = np.argwhere(hit)
    if len(found) == 0:
        return DispersionReport(present=False, d_next=d_next)
    u, c = found[0]
    return DispersionReport(present=True, witness=(int(u), int(c)), d_next=d_next)
