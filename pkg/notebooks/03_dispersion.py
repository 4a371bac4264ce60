"""After one round on K_{50,50} some uncolored vertex keeps a color no neighbour can take."""

from nibblecolor import (RunConfig, bipartite_dispersion_check, build_schedule,
                         gen_complete_bipartite, init_state, run_round)
from nibblecolor.rng import CounterRNG

g = gen_complete_bipartite(50)
cfg = RunConfig.from_k(50, 2, seed=0)
sched = build_schedule(cfg.schedule_params(g))
state = init_state(g, cfg)
out = run_round(state, sched, 0, CounterRNG(cfg.seed))
print(out)
rep = bipartite_dispersion_check(state, float(sched.d[1]))
print(f"d_1 = {sched.d[1]:.3f}, dispersion present: {rep.present}, witness: {rep.witness}")
