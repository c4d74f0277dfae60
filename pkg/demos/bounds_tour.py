"""Work and efficiency bounds for a random multilevel engine.

Local bounds use one bath at a time; nonlocal ones also see how much the
two population vectors overlap. Every bound should sit above the actual.
"""
import numpy as np

from swapengine import BathSpec, CycleParams, Mode, cycle_observables, efficiency_bounds, work_bounds

rng = np.random.default_rng(3)
while True:
    e_h = np.sort(rng.uniform(0, 4, 4))
    cold = BathSpec(e_h / rng.uniform(1.1, 1.8), 1.6, "cold")
    hot = BathSpec(e_h, 0.5, "hot")
    params = CycleParams(0.7)
    rep = cycle_observables(cold, hot, params)
    if rep.mode is Mode.ENGINE:
        break

print(f"engine: W={rep.work:.5f}  eta={rep.efficiency:.4f}  Carnot={1 - hot.beta / cold.beta:.4f}\n")
for b in work_bounds(cold, hot, params):
    val = "skipped: " + b.skipped if b.skipped else f"{b.value:.5f}"
    print(f"{b.name:18s} {b.locality:8s} {b.sense:5s}  {val}")
print()
for b in efficiency_bounds(cold, hot, params):
    print(f"{b.name:18s} {b.locality:8s} {b.sense:5s}  {b.value:.5f}")
