"""First-law observables, Clausius numbers, purity bookkeeping, operating mode.

Sign conventions: heat is positive when it flows into the engine, work is
positive when extracted. The Clausius factor of level i is

    D_i = E_c,i / T_c - E_h,i / T_h

so that R_1 = sum_i dp_i D_i = -Q_h/T_h - Q_c/T_c is the entropy produced in
the baths per cycle, and every R_{2m-1} is nonnegative.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .cycle import SteadyState, steady_populations
from .errors import AmbiguousMaximum, LengthMismatch, UltraHotTemperature, ZeroChange
from .statekit import BathSpec, CycleParams, gibbs_population

MODE_TOL = 1e-12
ZERO_DP_TOL = 1e-15


class Mode(str, Enum):
    ENGINE = "Engine"
    REFRIGERATOR = "Refrigerator"
    HEATER = "Heater"
    DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class CycleReport:
    q_hot: float
    q_cold: float
    work: float
    efficiency: Optional[float]
    mode: Mode
    clausius: Optional[float]
    purity_total: float
    steady: SteadyState
    ultra_hot: bool = False


def _baths(cold: BathSpec, hot: BathSpec):
    if cold.n_levels != hot.n_levels:
        raise LengthMismatch(f"cold has {cold.n_levels} levels, hot has {hot.n_levels}")
    return gibbs_population(cold), gibbs_population(hot)


def classify(work, q_cold, dp, t_ordered=True, same_temperature=False) -> Mode:
    """Mode from the per-cycle averages; Engine and Refrigerator are exclusive.

    With equal temperatures there is no gradient to pump against and the
    "cold" label is arbitrary, so spent work is always reported as Heater.
    """
    if not np.any(np.abs(dp) > 0):
        return Mode.DEGENERATE
    engine = work > MODE_TOL
    fridge = q_cold > MODE_TOL and not same_temperature
    if engine and fridge and t_ordered:
        raise AssertionError("work extracted while cooling the cold bath")
    if engine:
        return Mode.ENGINE
    if fridge:
        return Mode.REFRIGERATOR
    return Mode.HEATER


def first_law(dp, e_cold, e_hot):
    """(Q_h, Q_c, W) for a per-cycle engine population change ``dp``."""
    q_h = float(np.dot(e_hot, dp))
    q_c = -float(np.dot(e_cold, dp))
    w = float(np.dot(dp, np.asarray(e_hot) - np.asarray(e_cold)))
    return q_h, q_c, w


def clausius_factor(cold: BathSpec, hot: BathSpec) -> np.ndarray:
    if cold.beta == 0 or hot.beta == 0:
        raise UltraHotTemperature("the Clausius factor needs beta > 0 in both baths")
    return cold.beta * cold.energies - hot.beta * hot.energies


def cycle_observables(cold: BathSpec, hot: BathSpec, params: CycleParams) -> CycleReport:
    p_c, p_h = _baths(cold, hot)
    st = steady_populations(p_c, p_h, params)
    q_h, q_c, w = first_law(st.dp, cold.energies, hot.energies)
    mode = classify(w, q_c, st.dp, t_ordered=hot.beta <= cold.beta, same_temperature=hot.beta == cold.beta)
    eta = None
    if mode is Mode.ENGINE:
        # heat enters through whichever bath supplies it; normally the hot one
        q_in = q_h if q_h > 0 else q_c
        eta = w / q_in
    ultra = cold.beta == 0 or hot.beta == 0
    clausius = None if ultra else float(np.dot(st.dp, clausius_factor(cold, hot)))
    pur = purity_change_from_populations(p_c, p_h, st.x_tilde)["total"]
    return CycleReport(q_h, q_c, w, eta, mode, clausius, pur, st, ultra)


def clausius_number(cold: BathSpec, hot: BathSpec, params: CycleParams, m: int = 1) -> float:
    """R_{2m-1} = sum_i dp_i D_i^{2m-1}."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    d = clausius_factor(cold, hot)
    p_c, p_h = _baths(cold, hot)
    dp = steady_populations(p_c, p_h, params).dp
    return float(np.dot(dp, d ** (2 * m - 1)))


def clausius_number_pairwise(cold: BathSpec, hot: BathSpec, params: CycleParams, m: int = 1) -> float:
    """R_{2m-1} from the symmetrized double sum, every pair term of which is >= 0.

    Independent of the steady-state solver; used to cross-check
    ``clausius_number``.
    """
    eps_c = cold.beta * cold.energies
    eps_h = hot.beta * hot.energies
    d = eps_c - eps_h
    xt = params.x_tilde
    shift = min(eps_c.min(), eps_h.min())
    wc = np.exp(-(eps_c - shift))
    zc = wc.sum()
    zh = np.exp(-(eps_h - shift)).sum()
    pair_w = np.outer(wc, wc)
    ed = np.exp(d - d.max())
    diff_e = (ed[:, None] - ed[None, :]) * np.exp(d.max())
    diff_p = d[:, None] ** (2 * m - 1) - d[None, :] ** (2 * m - 1)
    return float(0.5 * xt / (2 - xt) * np.sum(pair_w * diff_e * diff_p) / (zc * zh))


def clausius_dominated_level(cold: BathSpec, hot: BathSpec, params: CycleParams, tie_tol=1e-12) -> dict:
    d = clausius_factor(cold, hot)
    p_c, p_h = _baths(cold, hot)
    dp = steady_populations(p_c, p_h, params).dp
    # equal populations make D constant, so report the vanishing change first
    if np.max(np.abs(dp)) <= ZERO_DP_TOL:
        raise ZeroChange("dp vanishes: the two baths have the same populations")
    a = np.abs(d)
    order = np.argsort(a)[::-1]
    i = int(order[0])
    if a.size > 1 and a[order[0]] - a[order[1]] <= tie_tol:
        raise AmbiguousMaximum(f"levels {order[0]} and {order[1]} tie for the largest |D_i|")
    if dp[i] == 0:
        raise ZeroChange(f"dp vanishes at the dominated level {i}")
    return {"index": i, "sign_match": bool(np.sign(dp[i]) == np.sign(d[i]))}


def purity_change_from_populations(p_c, p_h, x_tilde) -> dict:
    """Per-cycle purity changes of the two baths' scattered particles.

    Works for any diagonal bath populations, thermal or not. The hot-side
    particle changes by -dp, the cold-side one by +dp.
    """
    p_c = np.asarray(p_c, dtype=float)
    p_h = np.asarray(p_h, dtype=float)
    dp = steady_populations(p_c, p_h, x_tilde).dp
    d_hot = float(np.sum((p_h - dp) ** 2) - p_h @ p_h)
    d_cold = float(np.sum((p_c + dp) ** 2) - p_c @ p_c)
    return {"delta_p_hot": d_hot, "delta_p_cold": d_cold, "total": d_hot + d_cold}


def purity_change(cold: BathSpec, hot: BathSpec, params: CycleParams) -> dict:
    p_c, p_h = _baths(cold, hot)
    return purity_change_from_populations(p_c, p_h, params.x_tilde)


# Measured by direct computation: total = -PURITY_COEFFICIENT * g(x~) * |p_h - p_c|^2
PURITY_COEFFICIENT = 4.0


def purity_prefactor(x_tilde) -> float:
    """g(x~) = x~ (1 - x~) / (2 - x~)^2."""
    return x_tilde * (1 - x_tilde) / (2 - x_tilde) ** 2


def purity_change_lower_bound_from_populations(p_c, p_h, x_tilde) -> float:
    """Local lower bound c g(x~) (sqrt(P_h) - sqrt(P_c))^2 on |total purity change|."""
    p_c = np.asarray(p_c, dtype=float)
    p_h = np.asarray(p_h, dtype=float)
    gap = np.sqrt(p_h @ p_h) - np.sqrt(p_c @ p_c)
    return float(PURITY_COEFFICIENT * purity_prefactor(x_tilde) * gap**2)


def purity_change_lower_bound(cold: BathSpec, hot: BathSpec, params: CycleParams) -> float:
    p_c, p_h = _baths(cold, hot)
    return purity_change_lower_bound_from_populations(p_c, p_h, params.x_tilde)


def fit_purity_coefficient(p_pairs, x_tildes) -> float:
    """Least-squares c in total = -c g(x~) |p_h - p_c|^2 over many instances."""
    num = den = 0.0
    for (p_c, p_h), xt in zip(p_pairs, x_tildes):
        total = purity_change_from_populations(p_c, p_h, xt)["total"]
        g = -purity_prefactor(xt) * float(np.sum((np.asarray(p_h) - np.asarray(p_c)) ** 2))
        num += total * g
        den += g * g
    return num / den
