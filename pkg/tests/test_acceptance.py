"""Exit criteria, one test per criterion; a PASS/FAIL line per test is printed
in the terminal summary."""

import json
import math
import time

import mpmath
import numpy as np
import pytest

from nibblecolor import dimacs
from nibblecolor.cli import main
from nibblecolor.diagnostics import bipartite_dispersion_check
from nibblecolor.engine import RunConfig, init_state, run, run_round
from nibblecolor.graph import (gen_complete_bipartite, gen_random_bipartite,
                               gen_random_triangle_free, verify_proper)
from nibblecolor.harness import sweep
from nibblecolor.lemmas import padded_mean, trimmed_mean_bound
from nibblecolor.rng import CounterRNG
from nibblecolor.schedule import ScheduleParams, build_schedule, decay_constants

from conftest import random_reachable_state
from reference import reference_round

# criterion 6 instance: 1000 + 1000 vertices, max degree exactly 64
DESK_P, DESK_SEED = 0.042, 0
# K_{50,50}, 25 colors: seed where round 0 colors some vertex
DISPERSION_SEED = 0


def test_c01_schedule_exactness():
    start = time.perf_counter()
    s = build_schedule(ScheduleParams(delta=1000, k=2, q=7))
    elapsed = time.perf_counter() - start
    law = -(7 - 1) / (2 * 7**3) * math.exp(-1 / 7)
    drops = np.diff(s.d[: s.t1 + 1] / s.s[: s.t1 + 1])
    assert np.all(np.abs(drops - law) <= 1e-12 * abs(law))
    mpmath.mp.dps = 50
    c = mpmath.mpf(6) / 686 * mpmath.exp(-mpmath.mpf(1) / 7)
    assert int(mpmath.floor((2 - mpmath.mpf(1) / 49) / c)) + 1 == 262
    assert s.t1 == 262
    assert elapsed < 1.0


def test_c02_stage_two_lemmas():
    start = time.perf_counter()
    for delta in (1e3, 1e4):
        for k in (1, 2, 4):
            for q in (5, 7, 10):
                s = build_schedule(ScheduleParams(delta=delta, k=k, q=q))
                rho, mu = decay_constants(q)
                t1 = s.t1
                steps = np.arange(s.t2 + 1)
                eta, d, sv = s.eta[t1:], s.d[t1:], s.s[t1:]
                # at t = 0 the eta bound is an identity, so it is checked from t = 1
                assert np.all(eta[1:] < eta[0] * rho ** steps[1:])
                assert np.all(d / sv < rho ** steps / q**2)
                assert np.all(sv >= sv[0] * (1 - 4 / (q - 2)))
                assert np.all(d >= d[0] * (1 - 4 / (q - 2)) * mu ** steps)
    assert time.perf_counter() - start < 10.0


def test_c03_averaging_lemmas():
    start = time.perf_counter()
    rs = np.random.default_rng(2024)
    for _ in range(1000):
        n = int(rs.integers(1, 80))
        values = rs.exponential(rs.uniform(0.1, 100), n) + 1e-9
        q = rs.uniform(1, 10)
        if q == 1:
            continue
        mu = values.mean()
        big = np.flatnonzero(values >= q * mu)
        assert len(big) <= n / q
        drop = big[rs.random(len(big)) < 0.5]
        alpha = len(drop) / n
        kept = np.delete(values, drop)
        assert kept.mean() <= trimmed_mean_bound(mu, alpha, q) * (1 + 1e-12)
    for _ in range(1000):
        n = int(rs.integers(1, 80))
        values = rs.exponential(rs.uniform(0.1, 100), n)
        q = rs.uniform(1, 10)
        extra = int(rs.integers(0, 80))
        mu = values.mean()
        grown = np.concatenate([values, np.full(extra, q * mu)])
        expect = padded_mean(mu, extra / n, q)
        assert abs(grown.mean() - expect) <= 1e-12 * abs(expect)
    assert time.perf_counter() - start < 5.0


def test_c04_every_success_is_proper():
    cases = [(gen_complete_bipartite(1), RunConfig(num_colors=2, seed=s)) for s in range(40)]
    for s in range(40):
        g = gen_random_triangle_free(6, 2, s)
        cases.append((g, RunConfig(num_colors=4, seed=s)))
    successes = 0
    for g, cfg in cases:
        rep = run(g, cfg)
        if rep.success:
            successes += 1
            assert verify_proper(g, rep.coloring) == []
            assert rep.colors_used <= cfg.num_colors
    assert successes > 0


def test_c05_round_matches_brute_force():
    start = time.perf_counter()
    for case in range(100):
        rs = np.random.default_rng(case)
        n = int(rs.integers(5, 51))
        g = gen_random_triangle_free(n, int(rs.integers(1, min(8, n - 1) + 1)), case)
        colors = int(rs.integers(1, 9))
        k = max(g.max_degree, 1) / colors
        q = float(rs.choice([2.5, 4.0, 7.0]))
        sched = build_schedule(ScheduleParams.for_graph(n, max(g.max_degree, 1), k, q=q))
        if sched.tau == 0:
            continue
        t = int(rs.integers(0, min(sched.tau, 60)))
        st = random_reachable_state(g, colors, rs, colored_frac=rs.uniform(0, 0.4),
                                    keep=rs.uniform(0.3, 1.0))
        adj = [set(g.neighbors(u).tolist()) for u in range(n)]
        rng = CounterRNG(1000 + case)
        ref_color, ref_pal, drops = reference_round(
            adj, st.color.tolist(), [set(np.flatnonzero(r).tolist()) for r in st.palette],
            t, float(sched.assign_prob[t]), float(sched.desired_survival[t]),
            float(sched.d[t + 1]), float(sched.s[t + 1]), q, rng)
        out = run_round(st, sched, t, rng, check=True)
        assert st.color.tolist() == ref_color
        assert [set(np.flatnonzero(r).tolist()) for r in st.palette] == ref_pal
        ref_dcount = np.array([[sum(1 for v in adj[u] if ref_color[v] < 0 and c in ref_pal[v])
                                for c in range(colors)] for u in range(n)]).reshape(n, colors)
        np.testing.assert_array_equal(st.dcount, ref_dcount)
        assert (out.palette_removals_phase2_1, out.palette_removals_phase2_2,
                out.palette_removals_phase3) == drops
    assert time.perf_counter() - start < 10.0


def test_c06_desk_scale_success_rate():
    start = time.perf_counter()
    g = gen_random_bipartite(1000, DESK_P, DESK_SEED)
    assert g.n == 2000 and g.max_degree == 64
    cfg = RunConfig.from_k(g.max_degree, 2, q=7)
    assert cfg.num_colors == 32
    summary = sweep(g, cfg, range(20), parallelism=4)
    assert summary.greedy_baseline <= 65
    for r in summary.results:
        if r.outcome == "success":
            assert r.colors_used <= 32
    print(f"desk-scale: {summary.successes}/20 successes, outcomes "
          f"{sorted({r.outcome for r in summary.results})}, "
          f"greedy baseline {summary.greedy_baseline} colors")
    assert summary.successes >= 18
    assert time.perf_counter() - start < 120.0


def test_c07_bipartite_dispersion():
    start = time.perf_counter()
    g = gen_complete_bipartite(50)
    cfg = RunConfig.from_k(50, 2, q=7, seed=DISPERSION_SEED)
    sched = build_schedule(cfg.schedule_params(g))
    st = init_state(g, cfg)
    run_round(st, sched, 0, CounterRNG(cfg.seed), check=True)
    rep = bipartite_dispersion_check(st, float(sched.d[1]))
    assert sched.d[1] >= 1
    assert rep.present
    u, c = rep.witness
    assert st.palette[u, c] and st.dcount[u, c] == 0 and st.color[u] < 0
    assert time.perf_counter() - start < 1.0


def test_c08_cleanup_postcondition():
    graphs = [gen_random_bipartite(80, 0.15, s) for s in range(3)]
    graphs += [gen_random_triangle_free(120, 10, s) for s in range(3)]
    rounds = 0
    for i, g in enumerate(graphs):
        for k in (0.5, 1, 2):
            cfg = RunConfig.from_k(g.max_degree, k, seed=i)
            sched = build_schedule(cfg.schedule_params(g))
            st = init_state(g, cfg)
            rng = CounterRNG(i)
            for t in range(min(sched.tau, 80)):
                out = run_round(st, sched, t, rng, check=True)
                thr = out.cleanup_threshold
                assert not (st.palette & (st.dcount >= thr[:, None])).any()
                rounds += 1
    assert rounds > 0


def test_c09_round_count_scaling():
    taus = []
    for delta in (32, 64, 128):
        p = delta / 1000 * 0.8
        g = gen_random_bipartite(500, p, delta)
        cfg = RunConfig.from_k(g.max_degree, 2)
        taus.append(build_schedule(cfg.schedule_params(g)).tau)
    for a, b in zip(taus, taus[1:]):
        assert b < 1.5 * a


def test_c10_determinism(tmp_path, capsys):
    g = gen_random_triangle_free(200, 12, 4)
    path = tmp_path / "g.col"
    dimacs.write(g, path)
    outputs = []
    for i in range(2):
        trace = tmp_path / f"trace{i}.jsonl"
        main(["run", "--graph", str(path), "--k", "1", "--seed", "99", "--trace", str(trace)])
        outputs.append((capsys.readouterr().out, trace.read_bytes()))
    assert outputs[0] == outputs[1]
    report = json.loads(outputs[0][0])
    assert report["rounds_used"] == outputs[0][1].count(b"\n")
    cfg = RunConfig.from_k(g.max_degree, 1)
    a = sweep(g, cfg, range(20), parallelism=1)
    b = sweep(g, cfg, range(20), parallelism=8)
    assert a == b
