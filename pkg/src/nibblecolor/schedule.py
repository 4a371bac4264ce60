"""Idealized sequences eta_t, d_t, s_t and the quantities derived from them.

The first stage runs while ``d_t / s_t >= 1/q**2``; the second stage runs
while ``eta_t >= (q-1)/q * s_t``. Row ``tau`` (the first row violating the
second condition) is kept so the last round can read ``d_{t+1}``/``s_{t+1}``.
"""

import csv
import math
from dataclasses import dataclass, field

import numpy as np

ROUND_CAP = 10**6


class ScheduleError(ValueError):
    pass


class NonTerminationError(RuntimeError):
    pass


@dataclass(frozen=True)
class ScheduleParams:
    delta: float
    k: float
    q: float = 7.0
    psi: float = 3.0
    alpha1: float = 1.0
    alpha2: float = 1.0

    def __post_init__(self):
        if not self.q >= 2:
            raise ScheduleError("q must be at least 2")
        if not (self.k > 0 and self.delta > 0 and self.psi > 0 and self.alpha1 > 0):
            raise ScheduleError("delta, k, psi and alpha1 must be positive")

    @classmethod
    def for_graph(cls, n, delta, k, q=7.0, **kw):
        """Defaults psi to ``3 log n`` (floored at 1 for tiny graphs)."""
        kw.setdefault("psi", max(3.0 * math.log(max(n, 1)), 1.0))
        return cls(delta=float(delta), k=float(k), q=float(q), **kw)


@dataclass(frozen=True)
class Schedule:
    params: ScheduleParams
    eta: np.ndarray
    d: np.ndarray
    s: np.ndarray
    stage: np.ndarray
    assign_prob: np.ndarray
    clamped: np.ndarray
    desired_survival: np.ndarray
    envelope: np.ndarray = field(repr=False)
    log_eta: np.ndarray = field(repr=False, default=None)
    log_d: np.ndarray = field(repr=False, default=None)
    log_s: np.ndarray = field(repr=False, default=None)
    t1: int = 0
    tau: int = 0

    @property
    def t2(self):
        return self.tau - self.t1

    def __len__(self):
        return self.tau + 1

    def row(self, t):
        ap = self.assign_prob[t] if t < self.tau else None
        ds = self.desired_survival[t] if t < self.tau else None
        return {
            "t": t, "stage": int(self.stage[t]), "eta": float(self.eta[t]),
            "d": float(self.d[t]), "s": float(self.s[t]),
            "assign_prob": None if ap is None else float(ap),
            "desired_survival": None if ds is None else float(ds),
            "envelope": float(self.envelope[t]),
        }

    def _check_round(self, t):
        if not 0 <= t < self.tau:
            raise ScheduleError(f"round {t} outside [0, {self.tau})")


class _Scaled:
    """A positive real stored as ``m * 2**e`` so long schedules never underflow.

    Products and quotients round exactly as plain floats do; only the exponent
    range differs.
    """

    __slots__ = ("m", "e")

    def __init__(self, x, e=0):
        self.m, shift = math.frexp(x)
        self.e = e + shift

    def __mul__(self, f):
        return _Scaled(self.m * f, self.e)

    def __truediv__(self, other):
        return math.ldexp(self.m / other.m, self.e - other.e)

    def value(self):
        return math.ldexp(self.m, self.e)

    def log(self):
        return math.log(self.m) + self.e * _LN2


_LN2 = math.log(2.0)


def _stage1_step(eta, d, s, q):
    shrink = 1.0 - (q - 1) / (2 * q**3) * math.exp(-1.0 / q) * (s / d)
    return eta * shrink, d * shrink * math.exp(-1.0 / q), s * math.exp(-1.0 / q)


def _stage2_step(eta, d, s, q):
    keep = math.exp(-(d / s) / q)
    shrink = 1.0 - (q - 1) / (2 * q**3) * keep
    return eta * shrink, d * shrink * keep, s * keep


def build_schedule(p, round_cap=ROUND_CAP):
    if p.delta / p.k < 1:
        raise ScheduleError("delta / k must be at least 1")
    q = p.q
    eta, d, s = _Scaled(p.delta), _Scaled(p.delta), _Scaled(p.delta / p.k)
    rows, stage, ratio = [], [], []
    t1 = None
    t = 0
    while True:
        rows.append((eta, d, s))
        ratio.append(d / s)
        if t1 is None and ratio[t] < 1.0 / q**2:
            t1 = t
        if t1 is not None and eta / s < (q - 1) / q:
            break
        if t >= round_cap:
            raise NonTerminationError(f"schedule exceeded {round_cap} rounds")
        stage.append(1 if t1 is None else 2)
        step = _stage1_step if t1 is None else _stage2_step
        eta, d, s = step(eta, d, s, q)
        t += 1
    tau = t
    stage.append(2)

    log_eta = np.array([r[0].log() for r in rows])
    log_d = np.array([r[1].log() for r in rows])
    log_s = np.array([r[2].log() for r in rows])
    ratio = np.array(ratio)
    stage = np.array(stage, dtype=np.int8)
    in1 = stage[:tau] == 1
    eta_v = np.array([r[0].value() for r in rows])
    d_v = np.array([r[1].value() for r in rows])
    s_v = np.array([r[2].value() for r in rows])
    # an underflowed d or s gives inf here, which the cap turns into 1
    with np.errstate(divide="ignore", over="ignore"):
        raw = np.where(in1, 1.0 / (q**2 * d_v[:tau]), 1.0 / (q**2 * s_v[:tau]))
    clamped = raw > 1.0
    desired = np.where(in1, math.exp(-1.0 / q), np.exp(-ratio[:tau] / q))
    sched = Schedule(
        p, eta=eta_v, d=d_v, s=s_v, stage=stage, assign_prob=np.minimum(raw, 1.0), clamped=clamped,
        desired_survival=desired, envelope=np.zeros(tau + 1),
        log_eta=log_eta, log_d=log_d, log_s=log_s, t1=t1, tau=tau,
    )
    object.__setattr__(sched, "envelope", error_envelope(p, sched))
    for name in ("eta", "d", "s", "stage", "assign_prob", "clamped", "desired_survival",
                 "envelope", "log_eta", "log_d", "log_s"):
        getattr(sched, name).setflags(write=False)
    return sched


def assignment_prob(sched, t):
    """Per-(vertex, color) tentative assignment probability, capped at 1."""
    sched._check_round(t)
    return float(sched.assign_prob[t])


def desired_survival(sched, t):
    sched._check_round(t)
    return float(sched.desired_survival[t])


def error_envelope(p, sched):
    e = np.zeros(len(sched.d))
    with np.errstate(over="ignore"):
        terms = (np.exp(0.5 * (math.log(p.psi) - sched.log_d))
                 + np.exp(0.5 * (math.log(p.psi) - sched.log_s)))
    for t in range(len(e) - 1):
        e[t + 1] = p.alpha1 * (e[t] + terms[t])
    return e


def failure_floor(p, n, t):
    return 1.0 - p.alpha2 * t * n**2 * math.exp(-p.psi)


def decay_constants(q):
    """``(rho, mu)``: per-round decay bounds for eta and d in the second stage."""
    if q < 2:
        raise ScheduleError("q must be at least 2")
    return 1.0 - (q - 2) / (2 * q**3), 1.0 - 1.0 / (2 * q**2)


CSV_COLUMNS = ("t", "stage", "eta", "d", "s", "assign_prob", "desired_survival", "envelope")


def write_csv(sched, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for t in range(len(sched)):
            r = sched.row(t)
            w.writerow(["" if r[c] is None else repr(r[c]) for c in CSV_COLUMNS])
