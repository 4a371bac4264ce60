"""One run with per-round traces, showing how palettes collapse at small degree."""

from nibblecolor import RunConfig, build_schedule, gen_random_bipartite, run

g = gen_random_bipartite(300, 0.1, seed=1)
cfg = RunConfig.from_k(g.max_degree, 2, seed=7, diagnostics=True)
sched = build_schedule(cfg.schedule_params(g))
rep = run(g, cfg)
print(f"n={g.n} max degree={g.max_degree} colors={cfg.num_colors} tau={sched.tau}")
print(f"outcome: {rep.outcome}")
for tr in rep.traces[:30:3]:
    print(f"t={tr.t:3d} uncolored={tr.uncolored:4d} s_t={tr.s_ideal:9.3f} "
          f"min palette ratio={tr.min_palette_ratio:.3f}")
