"""Stochastic cycle-by-cycle simulation of the swap engine.

Each thermal stroke makes ``collisions_per_stroke`` Bernoulli(R) attempts;
a hit mixes the engine population with a fresh Gibbs particle at strength x.
Adiabatic strokes swap the level energies and leave populations alone.
"""
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import SwapEngineError
from .statekit import BathSpec, CycleParams, gibbs_population

RNG_ALGORITHM = "PCG64"
MIN_BURN_IN = 1000
BURN_WINDOW = 100


@dataclass(frozen=True)
class SimConfig:
    cold: BathSpec
    hot: BathSpec
    params: CycleParams
    n_cycles: int
    burn_in: Optional[int] = None  # None: adaptive, see resolve_burn_in
    seed: int = 0
    collisions_per_stroke: int = 1
    n_batches: int = 50

    def __post_init__(self):
        if self.n_cycles < 1:
            raise SwapEngineError("n_cycles must be positive")
        if self.burn_in is not None and not (0 <= self.burn_in < self.n_cycles):
            raise SwapEngineError("need 0 <= burn_in < n_cycles")
        if self.collisions_per_stroke < 1:
            raise SwapEngineError("collisions_per_stroke must be >= 1")
        if not (0 <= self.seed < 2**64):
            raise SwapEngineError("seed must be an unsigned 64-bit integer")
        if self.cold.n_levels != self.hot.n_levels:
            raise SwapEngineError("baths must have the same number of levels")


@dataclass(frozen=True)
class Trajectory:
    mean_p_A: np.ndarray
    mean_p_C: np.ndarray
    stderr_p_A: np.ndarray
    mean_work: float
    mean_q_hot: float
    mean_q_cold: float
    stderr_work: float
    mean_energy_change: float  # (U_end - U_start)/n_measured; closes the first law exactly
    n_measured: int
    burn_in: int
    seed: int
    rng_algorithm: str = RNG_ALGORITHM
    per_cycle_work: Optional[np.ndarray] = field(default=None, repr=False)


def _run(config: SimConfig, n_total: int, initial=None, record_bath=False):
    """Advance the engine ``n_total`` cycles; returns per-cycle arrays.

    Every engine population reachable here is a convex mix of p_h, p_c and
    the initial state, so the loop only updates the two scalar weights
    (a on p_h, b on p_c); populations and energies are rebuilt afterwards.
    """
    cold, hot, params = config.cold, config.hot, config.params
    p_c, p_h = gibbs_population(cold), gibbs_population(hot)
    e_c, e_h = cold.energies, hot.energies
    x = params.x
    m = config.collisions_per_stroke
    rng = np.random.Generator(np.random.PCG64(config.seed))
    hits = (rng.random((n_total, 2, m)) < params.r).tolist()

    n = p_c.size
    p0 = np.full(n, 1.0 / n) if initial is None else np.array(initial, dtype=float)
    basis = np.stack([p_h, p_c, p0])

    w_A = np.empty((n_total + 1, 2))
    w_C = np.empty((n_total, 2))
    pre = np.empty((n_total, 2, m, 2)) if record_bath else None
    a = b = 0.0
    for k in range(n_total):
        w_A[k] = a, b
        hot_hits, cold_hits = hits[k]
        for j in range(m):
            if record_bath:
                pre[k, 0, j] = a, b
            if hot_hits[j]:
                a += x * (1.0 - a)
                b -= x * b
        w_C[k] = a, b
        for j in range(m):
            if record_bath:
                pre[k, 1, j] = a, b
            if cold_hits[j]:
                a -= x * a
                b += x * (1.0 - b)
    w_A[n_total] = a, b

    def pops(w):
        full = np.concatenate([w, 1.0 - w.sum(axis=-1, keepdims=True)], axis=-1)
        return full @ basis

    pA_all = pops(w_A)
    pA, pA_next = pA_all[:-1], pA_all[1:]
    pC = pops(w_C)
    q_h = (pC - pA) @ e_h
    q_c = (pA_next - pC) @ e_c
    work = (pC - pA) @ (e_h - e_c)
    du = (pA_next - pA) @ e_c

    bath_purity = None
    if record_bath:
        hit_arr = np.asarray(hits, dtype=bool)
        p_pre = pops(pre)  # (n_total, 2, m, n)
        targets = np.stack([p_h, p_c])[None, :, None, :]
        scattered = targets + x * (p_pre - targets)
        d_pur = np.sum(scattered**2, axis=-1) - np.sum(targets**2, axis=-1)
        bath_purity = np.where(hit_arr, d_pur, 0.0).sum(axis=(1, 2))
    return {"pA": pA, "pC": pC, "work": work, "qh": q_h, "qc": q_c, "du": du, "bath_purity": bath_purity}


def resolve_burn_in(work, n_cycles) -> int:
    """First multiple of the window, past MIN_BURN_IN, where windowed mean work settles to 1%.

    Capped at half of the run so something is always left to measure.
    """
    cap = n_cycles // 2
    start = max(MIN_BURN_IN, 2 * BURN_WINDOW)
    for end in range(start, cap + 1, BURN_WINDOW):
        prev = work[end - 2 * BURN_WINDOW : end - BURN_WINDOW].mean()
        cur = work[end - BURN_WINDOW : end].mean()
        if abs(cur - prev) <= 0.01 * max(abs(prev), 1e-300):
            return end
    return min(MIN_BURN_IN, cap)


def batch_stderr(series, n_batches):
    """Standard error of the mean from non-overlapping batch means (handles autocorrelation)."""
    series = np.asarray(series)
    b = min(n_batches, series.shape[0])
    if b < 2:
        return np.zeros(series.shape[1:]) if series.ndim > 1 else 0.0
    size = series.shape[0] // b
    means = series[: b * size].reshape(b, size, *series.shape[1:]).mean(axis=1)
    return means.std(axis=0, ddof=1) / np.sqrt(b)


def simulate(config: SimConfig, keep_series: bool = False) -> Trajectory:
    run = _run(config, config.n_cycles)
    burn = config.burn_in if config.burn_in is not None else resolve_burn_in(run["work"], config.n_cycles)
    sl = slice(burn, None)
    work = run["work"][sl]
    n_meas = work.size
    return Trajectory(
        mean_p_A=run["pA"][sl].mean(axis=0),
        mean_p_C=run["pC"][sl].mean(axis=0),
        stderr_p_A=batch_stderr(run["pA"][sl], config.n_batches),
        mean_work=float(work.mean()),
        mean_q_hot=float(run["qh"][sl].mean()),
        mean_q_cold=float(run["qc"][sl].mean()),
        stderr_work=float(batch_stderr(work, config.n_batches)),
        mean_energy_change=float(run["du"][sl].mean()),
        n_measured=n_meas,
        burn_in=burn,
        seed=config.seed,
        per_cycle_work=work.copy() if keep_series else None,
    )


def simulate_bath_backreaction(config: SimConfig, bath_particles: int) -> dict:
    """Purity change of the scattered bath particles, cycle by cycle.

    Runs the burn-in and then ``bath_particles`` measured cycles; each
    collision scatters a fresh Gibbs particle whose post-collision purity
    change is recorded. ``purity_drift[k]`` sums both baths in cycle k.
    """
    if bath_particles < 1:
        raise SwapEngineError("bath_particles must be positive")
    burn = config.burn_in if config.burn_in is not None else MIN_BURN_IN
    run = _run(config, burn + bath_particles, record_bath=True)
    drift = run["bath_purity"][burn:]
    return {
        "purity_drift": drift,
        "mean": float(drift.mean()),
        "stderr": float(batch_stderr(drift, config.n_batches)),
    }
