"""Parameter sweeps and randomized invariant campaigns.

Both are deterministic functions of their inputs (and seed); the CLI only
formats what these return.
"""
from dataclasses import dataclass, replace
from typing import Literal

import numpy as np

from . import bounds as bd
from .errors import AmbiguousMaximum, ZeroChange
from .regimes import nca_comparison
from .statekit import (
    BathSpec,
    CycleParams,
    gibbs_population,
    jeffreys_divergence,
    kl_divergence,
    purity,
    shannon_entropy,
    wootters_distance,
)
from .thermo import (
    PURITY_COEFFICIENT,
    Mode,
    clausius_dominated_level,
    clausius_number,
    clausius_number_pairwise,
    cycle_observables,
    fit_purity_coefficient,
    purity_change_from_populations,
    purity_change_lower_bound_from_populations,
    purity_prefactor,
)

SWEEP_PARAMETERS = ("cold_scale", "compression", "x", "r", "beta_c", "beta_h")
SWEEP_COLUMNS = (
    "value",
    "work",
    "q_hot",
    "q_cold",
    "efficiency",
    "mode",
    "clausius_1",
    "entropy_production",
)


@dataclass(frozen=True)
class SweepSpec:
    parameter: Literal["cold_scale", "compression", "x", "r", "beta_c", "beta_h"]
    lo: float
    hi: float
    steps: int
    cold: BathSpec
    hot: BathSpec
    params: CycleParams

    def __post_init__(self):
        if self.parameter not in SWEEP_PARAMETERS:
            raise ValueError(f"unknown sweep parameter {self.parameter!r}")
        if not self.lo < self.hi:
            raise ValueError("sweep needs lo < hi")
        if self.steps < 2:
            raise ValueError("sweep needs at least 2 steps")

    def instance(self, value):
        """(cold, hot, params) with the swept parameter set to ``value``.

        cold_scale multiplies the template cold energies; compression sets
        E_c = E_h / value.
        """
        cold, hot, params = self.cold, self.hot, self.params
        if self.parameter == "cold_scale":
            cold = BathSpec(self.cold.energies * value, cold.beta, "cold")
        elif self.parameter == "compression":
            cold = BathSpec(self.hot.energies / value, cold.beta, "cold")
        elif self.parameter == "x":
            params = replace(params, x=value)
        elif self.parameter == "r":
            params = replace(params, r=value)
        elif self.parameter == "beta_c":
            cold = BathSpec(cold.energies, value, "cold")
        else:
            hot = BathSpec(hot.energies, value, "hot")
        return cold, hot, params


def sweep_point(cold, hot, params, value) -> dict:
    rep = cycle_observables(cold, hot, params)
    return {
        "value": value,
        "work": rep.work,
        "q_hot": rep.q_hot,
        "q_cold": rep.q_cold,
        "efficiency": rep.efficiency,
        "mode": rep.mode.value,
        "clausius_1": rep.clausius,
        "entropy_production": -hot.beta * rep.q_hot - cold.beta * rep.q_cold,
    }


def run_sweep(spec: SweepSpec) -> list:
    return [sweep_point(*spec.instance(float(v)), float(v)) for v in np.linspace(spec.lo, spec.hi, spec.steps)]


# -- fuzz -------------------------------------------------------------------


def random_instance(rng, max_levels=6, e_max=5.0, beta_range=(0.1, 10.0)):
    """Random Gibbs pair; the hot bath always gets the smaller beta."""
    n = int(rng.integers(2, max_levels + 1))
    e_c = rng.uniform(0, e_max, n)
    e_h = rng.uniform(0, e_max, n)
    b1, b2 = rng.uniform(*beta_range, 2)
    x = 1.0 - rng.random()
    r = 1.0 - rng.random()
    return BathSpec(e_c, max(b1, b2), "cold"), BathSpec(e_h, min(b1, b2), "hot"), CycleParams(x, r)


def _describe(cold, hot, params, **extra):
    d = {
        "cold_energies": cold.energies.tolist(),
        "beta_c": cold.beta,
        "hot_energies": hot.energies.tolist(),
        "beta_h": hot.beta,
        "x": params.x,
        "r": params.r,
    }
    d.update(extra)
    return d


class _Tally:
    def __init__(self):
        self.stats = {}

    def check(self, name, ok, describe):
        s = self.stats.setdefault(name, {"checked": 0, "passed": 0, "first_counterexample": None})
        s["checked"] += 1
        if ok:
            s["passed"] += 1
        elif s["first_counterexample"] is None:
            s["first_counterexample"] = describe()

    @property
    def failures(self):
        return sum(s["checked"] - s["passed"] for s in self.stats.values())


CLAUSIUS_ORDERS = (1, 2, 3, 5)


def check_instance(tally, cold, hot, params, rng):
    """Evaluate every invariant on one random instance."""
    desc = lambda **kw: _describe(cold, hot, params, **kw)  # noqa: E731
    rep = cycle_observables(cold, hot, params)
    p_c, p_h = gibbs_population(cold), gibbs_population(hot)
    xt = params.x_tilde
    k = rep.steady.prefactor
    fl = rep.q_hot + rep.q_cold - rep.work
    tally.check("first_law", abs(fl) <= 1e-10, lambda: desc(residual=fl))

    for m in CLAUSIUS_ORDERS:
        r = clausius_number(cold, hot, params, m)
        tally.check(f"clausius_{2 * m - 1}_nonnegative", r >= -1e-12, lambda: desc(value=r))
    r1, r1p = rep.clausius, clausius_number_pairwise(cold, hot, params, 1)
    tally.check("clausius_pairwise_agrees", abs(r1 - r1p) <= 1e-12 + 1e-9 * abs(r1), lambda: desc(direct=r1, pairwise=r1p))
    kj = k * jeffreys_divergence(p_c, p_h)
    tally.check("clausius_equals_jeffreys", abs(r1 - kj) <= 1e-12, lambda: desc(clausius=r1, k_jeffreys=kj))

    try:
        dom = clausius_dominated_level(cold, hot, params)
    except (AmbiguousMaximum, ZeroChange):
        pass
    else:
        tally.check("dominated_level_sign", dom["sign_match"], lambda: desc(**dom))

    pc = purity_change_from_populations(p_c, p_h, xt)
    tally.check("purity_total_nonpositive", pc["total"] <= 1e-12, lambda: desc(**pc))
    predicted = -PURITY_COEFFICIENT * purity_prefactor(xt) * float(np.sum((p_h - p_c) ** 2))
    tally.check("purity_coefficient", abs(pc["total"] - predicted) <= 1e-12, lambda: desc(total=pc["total"], predicted=predicted))
    lb = purity_change_lower_bound_from_populations(p_c, p_h, xt)
    tally.check("purity_lower_bound_thermal", abs(pc["total"]) >= lb - 1e-15, lambda: desc(total=pc["total"], bound=lb))
    q_c, q_h = rng.dirichlet(np.ones(p_c.size)), rng.dirichlet(np.ones(p_c.size))
    pcn = purity_change_from_populations(q_c, q_h, xt)["total"]
    lbn = purity_change_lower_bound_from_populations(q_c, q_h, xt)
    tally.check(
        "purity_lower_bound_nonthermal",
        pcn <= 1e-12 and abs(pcn) >= lbn - 1e-15,
        lambda: desc(p_c=q_c.tolist(), p_h=q_h.tolist(), total=pcn, bound=lbn),
    )
    for name, p in (("p_c", p_c), ("p_h", p_h), ("p_A", rep.steady.p_A), ("p_C", rep.steady.p_C)):
        tally.check("purity_entropy", purity(p) >= np.exp(-shannon_entropy(p)) - 1e-15, lambda: desc(which=name))

    kl1, kl2 = kl_divergence(p_c, p_h), kl_divergence(p_h, p_c)
    tally.check("kl_nonnegative", kl1 >= -1e-15 and kl2 >= -1e-15, lambda: desc(kl_ch=kl1, kl_hc=kl2))
    jw = jeffreys_divergence(p_c, p_h) - bd.WOOTTERS_CONST * wootters_distance(p_c, p_h) ** 2
    tally.check("jeffreys_wootters", jw >= -1e-12, lambda: desc(gap=jw))

    eng = bd.engine_necessary_condition(cold, hot)
    fri = bd.refrigerator_necessary_condition(cold, hot)
    if rep.mode is Mode.ENGINE:
        tally.check("engine_necessary_condition", eng.satisfied, lambda: desc(threshold=eng.value, coincidence=eng.actual))
    if rep.mode is Mode.REFRIGERATOR:
        tally.check("refrigerator_necessary_condition", fri.satisfied, lambda: desc(threshold=fri.value, coincidence=fri.actual))

    for b in bd.work_bounds(cold, hot, params):
        if b.skipped is None:
            tally.check(f"work_bound_{b.name}", b.satisfied, lambda b=b: desc(bound=b.value, actual=b.actual))

    if rep.mode is Mode.ENGINE:
        carnot = 1 - hot.beta / cold.beta
        tally.check("carnot", rep.efficiency <= carnot + 1e-12, lambda: desc(eta=rep.efficiency, carnot=carnot))
        effs = {b.name: b for b in bd.efficiency_bounds(cold, hot, params)}
        for b in effs.values():
            tally.check(f"efficiency_bound_{b.name}", b.satisfied, lambda b=b: desc(bound=b.value, eta=b.actual))
        chain = (rep.efficiency, effs["l2_coincidence"].value, effs["purity"].value, effs["carnot"].value)
        tally.check(
            "efficiency_chain_order",
            all(chain[i] <= chain[i + 1] + 1e-9 for i in range(3)),
            lambda: desc(chain=list(chain)),
        )
        ed = bd.entropy_difference_condition(cold, hot)
        tally.check("entropy_difference", ed["entropy_difference"] >= ed["required"] - 1e-9, lambda: desc(**ed))
        if cold.n_levels == 2:
            de_c = cold.energies[1] - cold.energies[0]
            de_h = hot.energies[1] - hot.energies[0]
            two = 1 - de_c / de_h
            tally.check("two_level_efficiency", abs(rep.efficiency - two) <= 1e-10, lambda: desc(eta=rep.efficiency, expected=two))
    else:
        tally.check("efficiency_only_in_engine_mode", rep.efficiency is None, lambda: desc(mode=rep.mode.value))

    c_shift, h_shift = rng.uniform(-10, 10, 2)
    rs = cycle_observables(cold.shifted(c_shift), hot.shifted(h_shift), params)
    same = (
        abs(rs.work - rep.work) <= 1e-9
        and abs(rs.q_hot - rep.q_hot) <= 1e-9
        and abs(rs.q_cold - rep.q_cold) <= 1e-9
        and rs.mode is rep.mode
        and (rep.efficiency is None) == (rs.efficiency is None)
        and (rep.efficiency is None or abs(rs.efficiency - rep.efficiency) <= 1e-9)
    )
    tally.check("shift_invariance", same, lambda: desc(shifts=[c_shift, h_shift]))

    single = BathSpec(hot.energies, cold.beta, "hot")
    w1 = cycle_observables(cold, single, params).work
    tally.check("single_bath_no_work", w1 <= 1e-12, lambda: desc(work_single_bath=w1))

    return p_c, p_h, xt


def run_fuzz(n: int, seed: int = 0, max_levels: int = 6) -> dict:
    if n < 1:
        raise ValueError("n must be >= 1")
    if max_levels < 2:
        raise ValueError("max_levels must be >= 2")
    rng = np.random.default_rng(seed)
    tally = _Tally()
    pairs, xts = [], []
    for _ in range(n):
        cold, hot, params = random_instance(rng, max_levels)
        p_c, p_h, xt = check_instance(tally, cold, hot, params, rng)
        pairs.append((p_c, p_h))
        xts.append(xt)
    for _ in range(n // 10 or 1):
        t_c, t_h = np.sort(rng.uniform(0.05, 20.0, 2))
        try:
            nca_comparison(t_c, t_h)
            ok = True
        except Exception:  # ordering violation surfaces as a domain error
            ok = False
        tally.check("nca_ordering", ok, lambda: {"t_c": t_c, "t_h": t_h})
    return {
        "n": n,
        "seed": seed,
        "max_levels": max_levels,
        "rng_algorithm": "PCG64",
        "failures": tally.failures,
        "purity_coefficient_fit": fit_purity_coefficient(pairs, xts),
        "invariants": tally.stats,
    }
