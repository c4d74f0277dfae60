"""High-temperature expansion and the best uniform compression.

When beta times the level spread is small the work is quadratic in the
centered spectra. Compressing the cold spectrum by a common factor C then
gives an engine for 1 < C < T_h/T_c with a single optimum in between.
"""
import warnings

import numpy as np

from swapengine import BathSpec, CycleParams, cycle_observables, nca_comparison, ultra_hot_optimize, ultra_hot_work

e = np.array([0.0, 0.4, 0.9, 1.5])
params = CycleParams(1.0)

print("first-order error shrinks as s^2:")
with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    for s in (0.2, 0.1, 0.05, 0.025):
        cold, hot = BathSpec(e / 1.3, 1.0 * s), BathSpec(e, 0.5 * s, "hot")
        exact = cycle_observables(cold, hot, params).work
        print(f"  s={s:<6} W={exact:.3e}  error={abs(exact - ultra_hot_work(cold, hot, params)):.3e}")

hot = BathSpec(e * 0.01, 0.5, "hot")
for constraint in ("fix_hot_norm", "fix_cold_norm"):
    rep = ultra_hot_optimize(hot, 1.0, constraint, params)
    print(f"\n{constraint}: C={rep.compression_ratio:.6f} (search {rep.compression_ratio_numeric:.6f}), eta={rep.eta:.4f}")
    print(f"  rotating the cold spectrum away from the hot one never helps: {rep.parallel_optimal}")

print("\nT_h/T_c   half-Carnot   Curzon-Ahlborn   eta_c/(2-eta_c)")
for ratio in (1.5, 2, 4, 10):
    v = nca_comparison(1.0, ratio)
    print(f"{ratio:7.1f}   {v['eta_half_carnot']:.4f}        {v['eta_nca']:.4f}           {v['eta_sym']:.4f}")
