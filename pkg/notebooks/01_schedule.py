"""Walk through the idealized schedule for a few parameter choices."""

from nibblecolor import ScheduleParams, build_schedule, decay_constants

for delta, k, q in [(1000, 2, 7), (1e6, 4, 7), (1e4, 1, 10)]:
    s = build_schedule(ScheduleParams(delta=delta, k=k, q=q))
    print(f"delta={delta:g} k={k} q={q}: t1={s.t1} t2={s.t2} tau={s.tau}")
    print(f"  d/s at t1 = {s.d[s.t1] / s.s[s.t1]:.5f}  (threshold {1 / q**2:.5f})")
    print(f"  s at t1 = {s.s[s.t1]:.3e}, eta/s at tau = {s.eta[s.tau] / s.s[s.tau]:.4f}")

rho, mu = decay_constants(7)
print(f"stage-two decay constants for q=7: rho={rho:.6f} mu={mu:.6f}")
# tau does not move with delta: the round count is set by k and q alone
print([build_schedule(ScheduleParams(delta=d, k=2)).tau for d in (1e3, 1e5, 1e8)])
