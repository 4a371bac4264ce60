"""Seed sweep against the greedy baseline."""

from nibblecolor import RunConfig, gen_random_triangle_free, sweep

g = gen_random_triangle_free(400, 16, seed=2)
for k in (0.5, 1, 2):
    cfg = RunConfig.from_k(g.max_degree, k)
    s = sweep(g, cfg, range(10), parallelism=4)
    print(f"k={k}: colors={cfg.num_colors} successes={s.successes}/{s.trials} "
          f"mean rounds={s.mean_rounds:.1f} greedy={s.greedy_baseline}")
