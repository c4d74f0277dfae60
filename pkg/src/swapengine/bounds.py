"""Necessary operating conditions and upper bounds on work and efficiency.

Local bounds are written as functions of ``LocalScalars`` only (one per bath);
nonlocal bounds also receive ``PairScalars``. That split is the locality
guarantee: a local bound has no way to see anything joint.
"""
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from .errors import NotAnEngine, PreconditionUnmet, UltraHotTemperature
from .statekit import (
    BathSpec,
    CycleParams,
    centered_energy,
    gibbs_population,
    jeffreys_divergence,
    kl_divergence,
    mutual_coincidence,
    purity,
    shannon_entropy,
    wootters_distance,
)
from .cycle import population_difference
from .thermo import Mode, cycle_observables

BOUND_TOL = 1e-9
EXACT_TOL = 1e-10
WOOTTERS_CONST = 16 / np.pi**2


@dataclass(frozen=True)
class BoundReport:
    name: str
    value: Optional[float]
    actual: float
    satisfied: Optional[bool]
    locality: Literal["local", "nonlocal"]
    sense: Literal["upper", "lower", "exact"] = "upper"
    skipped: Optional[str] = None


@dataclass(frozen=True)
class LocalScalars:
    """Single-bath quantities: entropy, purity, temperature, spectrum norms."""

    entropy: float
    purity: float
    temperature: float
    centered_norm: float
    energy_norm_sq: float
    n_levels: int


@dataclass(frozen=True)
class PairScalars:
    coincidence: float
    kl_ch: float  # D_KL(p_c | p_h)
    kl_hc: float  # D_KL(p_h | p_c)
    jeffreys: float
    wootters: float
    l2_distance: float  # |p_c - p_h|
    centered_diff_norm: float  # |Ec_centered - Eh_centered|
    energy_diff_norm: float  # |E_h - E_c|


def local_scalars(bath: BathSpec) -> LocalScalars:
    p = gibbs_population(bath)
    return LocalScalars(
        entropy=shannon_entropy(p),
        purity=purity(p),
        temperature=bath.temperature,
        centered_norm=float(np.linalg.norm(centered_energy(bath))),
        energy_norm_sq=float(bath.energies @ bath.energies),
        n_levels=bath.n_levels,
    )


def pair_scalars(cold: BathSpec, hot: BathSpec) -> PairScalars:
    p_c, p_h = gibbs_population(cold), gibbs_population(hot)
    return PairScalars(
        coincidence=mutual_coincidence(p_c, p_h),
        kl_ch=kl_divergence(p_c, p_h),
        kl_hc=kl_divergence(p_h, p_c),
        jeffreys=jeffreys_divergence(p_c, p_h),
        wootters=wootters_distance(p_c, p_h),
        l2_distance=float(np.linalg.norm(population_difference(p_c, p_h))),
        centered_diff_norm=float(np.linalg.norm(centered_energy(cold) - centered_energy(hot))),
        energy_diff_norm=float(np.linalg.norm(hot.energies - cold.energies)),
    )


def _require_finite_t(cold, hot):
    if cold.beta == 0 or hot.beta == 0:
        raise UltraHotTemperature("bounds need finite temperatures")


def _upper(name, value, actual, locality):
    return BoundReport(name, float(value), float(actual), bool(actual <= value + BOUND_TOL), locality)


def _skipped(name, actual, locality, reason):
    return BoundReport(name, None, float(actual), None, locality, skipped=reason)


# -- necessary conditions ---------------------------------------------------


def engine_threshold(c: LocalScalars, h: LocalScalars) -> float:
    return float(np.exp(-(c.temperature * c.entropy + h.temperature * h.entropy) / (c.temperature + h.temperature)))


def refrigerator_threshold(c: LocalScalars) -> float:
    return float(np.exp(-c.entropy))


def engine_necessary_condition(cold: BathSpec, hot: BathSpec) -> BoundReport:
    """P_ch >= exp(-(T_c S_c + T_h S_h)/(T_c + T_h)); must hold for every engine."""
    _require_finite_t(cold, hot)
    thr = engine_threshold(local_scalars(cold), local_scalars(hot))
    pch = pair_scalars(cold, hot).coincidence
    return BoundReport("engine_coincidence", thr, pch, bool(pch >= thr * (1 - 1e-12)), "nonlocal", "lower")


def refrigerator_necessary_condition(cold: BathSpec, hot: BathSpec) -> BoundReport:
    """P_ch >= exp(-S_c); must hold whenever the cold bath is being cooled."""
    _require_finite_t(cold, hot)
    thr = refrigerator_threshold(local_scalars(cold))
    pch = pair_scalars(cold, hot).coincidence
    return BoundReport("refrigerator_coincidence", thr, pch, bool(pch >= thr * (1 - 1e-12)), "nonlocal", "lower")


# -- work -------------------------------------------------------------------


def work_exact_divergence(k, c: LocalScalars, h: LocalScalars, pair: PairScalars) -> float:
    return k * (
        (h.temperature - c.temperature) * (h.entropy - c.entropy)
        - c.temperature * pair.kl_hc
        - h.temperature * pair.kl_ch
    )


def work_bound_coincidence(k, c: LocalScalars, h: LocalScalars, pair: PairScalars) -> float:
    return k * (
        c.temperature * c.entropy + h.temperature * h.entropy + (c.temperature + h.temperature) * np.log(pair.coincidence)
    )


def work_bound_purity_log(k, c: LocalScalars, h: LocalScalars) -> float:
    return k * (
        h.temperature * h.entropy
        + c.temperature * c.entropy
        + 0.5 * (h.temperature + c.temperature) * np.log(c.purity * h.purity)
    )


def work_bound_entropy_purity(k, c: LocalScalars, h: LocalScalars) -> float:
    gap = np.sqrt(c.purity) - np.sqrt(h.purity)
    return k * (
        (h.temperature - c.temperature) * (h.entropy - c.entropy) - 0.5 * (c.temperature + h.temperature) * gap**2
    )


def coincidence_distance_sq(c: LocalScalars, h: LocalScalars, pair: PairScalars) -> float:
    """P_c + P_h - 2 P_ch, evaluated as the identical |p_c - p_h|^2 to avoid cancellation."""
    return pair.l2_distance**2


def work_bound_cauchy_schwarz(k, c: LocalScalars, h: LocalScalars, pair: PairScalars) -> float:
    return k * np.sqrt(coincidence_distance_sq(c, h, pair)) * pair.centered_diff_norm


def work_bound_chebyshev(k, c: LocalScalars, h: LocalScalars, pair: PairScalars) -> float:
    # P_c + P_h - 2/N = |p_c - p_h|^2 + 2 (P_ch - 1/N); the second term is >= 0 for co-ordered levels
    stat = coincidence_distance_sq(c, h, pair) + 2 * max(pair.coincidence - 1.0 / c.n_levels, 0.0)
    return k * np.sqrt(stat) * pair.centered_diff_norm


def work_bound_compression(k, c: LocalScalars, h: LocalScalars) -> float:
    stat = max(c.purity + h.purity - 2.0 / c.n_levels, 0.0)
    return k * np.sqrt(stat) * np.sqrt(max(h.energy_norm_sq - c.energy_norm_sq, 0.0))


def same_level_order(cold: BathSpec, hot: BathSpec) -> bool:
    """True when no pair of levels is strictly ordered oppositely in the two spectra."""
    dc = np.sign(cold.energies[:, None] - cold.energies[None, :])
    dh = np.sign(hot.energies[:, None] - hot.energies[None, :])
    return bool(np.all(dc * dh >= 0))


def is_compression(cold: BathSpec, hot: BathSpec) -> bool:
    """E_c,i = E_h,i / C_i with every C_i >= 1 (same sign, smaller magnitude)."""
    ec, eh = cold.energies, hot.energies
    return bool(np.all(ec * eh >= 0) and np.all(np.abs(ec) <= np.abs(eh)) and np.all((eh != 0) | (ec == 0)))


def work_bounds(cold: BathSpec, hot: BathSpec, params: CycleParams) -> list:
    _require_finite_t(cold, hot)
    rep = cycle_observables(cold, hot, params)
    w = rep.work
    k = rep.steady.prefactor
    c, h = local_scalars(cold), local_scalars(hot)
    pair = pair_scalars(cold, hot)

    exact = work_exact_divergence(k, c, h, pair)
    out = [
        BoundReport("exact_divergence", exact, w, bool(abs(exact - w) <= EXACT_TOL), "nonlocal", "exact"),
        _upper("coincidence_log", work_bound_coincidence(k, c, h, pair), w, "nonlocal"),
        _upper("purity_log", work_bound_purity_log(k, c, h), w, "local"),
        _upper("entropy_purity", work_bound_entropy_purity(k, c, h), w, "local"),
        _upper("cauchy_schwarz", work_bound_cauchy_schwarz(k, c, h, pair), abs(w), "nonlocal"),
    ]
    if same_level_order(cold, hot):
        out.append(_upper("chebyshev", work_bound_chebyshev(k, c, h, pair), abs(w), "nonlocal"))
    else:
        out.append(_skipped("chebyshev", abs(w), "nonlocal", "levels cross between the baths"))
    if not same_level_order(cold, hot):
        out.append(_skipped("compression", abs(w), "local", "levels cross between the baths"))
    elif not is_compression(cold, hot):
        out.append(_skipped("compression", abs(w), "local", "spectra are not a compression (C_i >= 1)"))
    else:
        out.append(_upper("compression", work_bound_compression(k, c, h), abs(w), "local"))
    return out


def entropy_difference_condition(cold: BathSpec, hot: BathSpec) -> dict:
    """Minimum S_h - S_c that an engine needs, from the exact divergence form of W."""
    _require_finite_t(cold, hot)
    c, h = local_scalars(cold), local_scalars(hot)
    pair = pair_scalars(cold, hot)
    need = (c.temperature * pair.kl_hc + h.temperature * pair.kl_ch) / (h.temperature - c.temperature)
    return {"entropy_difference": h.entropy - c.entropy, "required": need}


# -- efficiency -------------------------------------------------------------


def carnot(c: LocalScalars, h: LocalScalars) -> float:
    return 1.0 - c.temperature / h.temperature


def efficiency_bound_l2(c: LocalScalars, h: LocalScalars, pair: PairScalars) -> float:
    return carnot(c, h) - c.temperature / h.centered_norm * np.sqrt(coincidence_distance_sq(c, h, pair))


def efficiency_bound_purity(c: LocalScalars, h: LocalScalars) -> float:
    return carnot(c, h) - c.temperature / h.centered_norm * abs(np.sqrt(c.purity) - np.sqrt(h.purity))


def efficiency_bound_wootters(c: LocalScalars, h: LocalScalars, pair: PairScalars) -> float:
    if pair.l2_distance == 0:
        return carnot(c, h)
    return carnot(c, h) - c.temperature * WOOTTERS_CONST * pair.wootters**2 / (pair.l2_distance * h.centered_norm)


def efficiency_bounds(cold: BathSpec, hot: BathSpec, params: CycleParams) -> list:
    _require_finite_t(cold, hot)
    rep = cycle_observables(cold, hot, params)
    if rep.mode is not Mode.ENGINE or rep.q_hot <= 0:
        raise NotAnEngine(f"efficiency bounds need an engine, got {rep.mode.value}")
    eta = rep.efficiency
    c, h = local_scalars(cold), local_scalars(hot)
    pair = pair_scalars(cold, hot)
    exact = carnot(c, h) - c.temperature * rep.clausius / abs(rep.q_hot)
    return [
        BoundReport("exact_clausius", exact, eta, bool(abs(exact - eta) <= EXACT_TOL), "nonlocal", "exact"),
        _upper("l2_coincidence", efficiency_bound_l2(c, h, pair), eta, "nonlocal"),
        _upper("wootters", efficiency_bound_wootters(c, h, pair), eta, "nonlocal"),
        _upper("purity", efficiency_bound_purity(c, h), eta, "local"),
        _upper("carnot", carnot(c, h), eta, "local"),
    ]
