import numpy as np
import pytest
from hypothesis import given, strategies as st

from swapengine.errors import AmbiguousMaximum, UltraHotTemperature, ZeroChange
from swapengine.statekit import BathSpec, CycleParams, gibbs_population, jeffreys_divergence, kl_divergence, purity
from swapengine.thermo import (
    PURITY_COEFFICIENT,
    Mode,
    classify,
    clausius_dominated_level,
    clausius_number,
    clausius_number_pairwise,
    cycle_observables,
    fit_purity_coefficient,
    purity_change,
    purity_change_from_populations,
    purity_change_lower_bound,
    purity_change_lower_bound_from_populations,
    purity_prefactor,
)

from conftest import bath_pairs, populations


def two_level(de_c, de_h, t_c=1.0, t_h=2.0, xt=1.0):
    return BathSpec([0, de_c], 1 / t_c, "cold"), BathSpec([0, de_h], 1 / t_h, "hot"), CycleParams(xt)


def test_identical_baths_are_degenerate():
    b = BathSpec([0, 1, 3], 0.7)
    rep = cycle_observables(b, BathSpec([0, 1, 3], 0.7, "hot"), CycleParams(0.5))
    assert rep.mode is Mode.DEGENERATE
    assert rep.work == 0 and rep.efficiency is None


def test_heat_from_stroke_bookkeeping(two_level):
    cold, hot, params = two_level
    rep = cycle_observables(cold, hot, params)
    st_ = rep.steady
    # hot stroke: engine goes A -> C with hot levels; cold stroke: C -> A with cold levels
    assert rep.q_hot == pytest.approx(float((st_.p_C - st_.p_A) @ hot.energies), abs=1e-15)
    assert rep.q_cold == pytest.approx(float((st_.p_A - st_.p_C) @ cold.energies), abs=1e-15)
    assert rep.q_hot + rep.q_cold - rep.work == pytest.approx(0.0, abs=1e-15)


def test_two_level_work_zeros_and_sign():
    assert abs(cycle_observables(*two_level(1.0, 2.0)).work) <= 1e-15
    assert abs(cycle_observables(*two_level(2.0, 2.0)).work) <= 1e-15
    for de in np.linspace(1.01, 1.99, 25):
        assert cycle_observables(*two_level(de, 2.0)).work > 0
    for de in (0.3, 0.9, 2.1, 3.0):
        assert cycle_observables(*two_level(de, 2.0)).work < 0


@given(st.floats(1.01, 1.99), st.floats(0.05, 1.0))
def test_two_level_efficiency_is_gap_ratio(de_c, xt):
    rep = cycle_observables(*two_level(de_c, 2.0, xt=xt))
    assert rep.mode is Mode.ENGINE
    assert rep.efficiency == pytest.approx(1 - de_c / 2.0, abs=1e-12)


def test_two_level_partition():
    assert cycle_observables(*two_level(0.5, 2.0)).mode is Mode.REFRIGERATOR
    assert cycle_observables(*two_level(1.5, 2.0)).mode is Mode.ENGINE
    assert cycle_observables(*two_level(2.5, 2.0)).mode is Mode.HEATER
    assert cycle_observables(*two_level(1.0, 2.0)).mode is Mode.DEGENERATE


def test_classify_refuses_engine_that_also_cools():
    with pytest.raises(AssertionError):
        classify(1.0, 1.0, np.array([0.1, -0.1]))
    assert classify(1.0, 1.0, np.array([0.1, -0.1]), t_ordered=False) is Mode.ENGINE


@given(bath_pairs())
def test_first_law_shift_invariance_and_carnot(inst):
    cold, hot, params = inst
    rep = cycle_observables(cold, hot, params)
    assert abs(rep.q_hot + rep.q_cold - rep.work) <= 1e-10
    shifted = cycle_observables(cold.shifted(3.7), hot.shifted(-1.2), params)
    assert shifted.mode is rep.mode
    for a, b in ((rep.work, shifted.work), (rep.q_hot, shifted.q_hot), (rep.q_cold, shifted.q_cold)):
        assert a == pytest.approx(b, abs=1e-9)
    if rep.mode is Mode.ENGINE:
        assert rep.efficiency <= 1 - hot.beta / cold.beta + 1e-12
        assert rep.q_cold <= 1e-12
        # exact divergence form of the entropy gap an engine needs
        p_c, p_h = gibbs_population(cold), gibbs_population(hot)
        t_c, t_h = cold.temperature, hot.temperature
        need = (t_c * kl_divergence(p_h, p_c) + t_h * kl_divergence(p_c, p_h)) / (t_h - t_c)
        from swapengine.statekit import shannon_entropy

        assert shannon_entropy(p_h) - shannon_entropy(p_c) >= need - 1e-9
    else:
        assert rep.efficiency is None


@given(bath_pairs())
def test_single_bath_gives_no_work(inst):
    cold, hot, params = inst
    rep = cycle_observables(cold, BathSpec(hot.energies, cold.beta, "hot"), params)
    assert rep.work <= 1e-12


@given(bath_pairs(), st.sampled_from([1, 2, 3, 5]))
def test_clausius_family_nonnegative(inst, m):
    assert clausius_number(*inst, m=m) >= -1e-12


@given(bath_pairs())
def test_clausius_one_is_entropy_production_and_jeffreys(inst):
    cold, hot, params = inst
    rep = cycle_observables(cold, hot, params)
    k = params.x_tilde / (2 - params.x_tilde)
    j = jeffreys_divergence(gibbs_population(cold), gibbs_population(hot))
    assert rep.clausius == pytest.approx(k * j, abs=1e-12)
    assert rep.clausius == pytest.approx(-hot.beta * rep.q_hot - cold.beta * rep.q_cold, abs=1e-12)


@given(bath_pairs(), st.sampled_from([1, 2, 3]))
def test_clausius_pairwise_oracle(inst, m):
    direct = clausius_number(*inst, m=m)
    assert clausius_number_pairwise(*inst, m=m) == pytest.approx(direct, abs=1e-12, rel=1e-9)


def test_clausius_examples():
    b = BathSpec([0, 1], 1.0)
    assert clausius_number(b, BathSpec([0, 1], 1.0, "hot"), CycleParams(0.5)) == 0.0
    with pytest.raises(UltraHotTemperature):
        clausius_number(b, BathSpec([0, 1], 0.0, "hot"), CycleParams(0.5))
    with pytest.raises(ValueError):
        clausius_number(b, BathSpec([0, 2], 0.5, "hot"), CycleParams(0.5), m=0)
    assert cycle_observables(b, BathSpec([0, 1], 0.0, "hot"), CycleParams(0.5)).clausius is None


def test_dominated_level_examples(two_level):
    cold, hot, params = two_level
    dom = clausius_dominated_level(cold, hot, params)
    assert dom["sign_match"]
    b = BathSpec([0, 1], 1.0)
    with pytest.raises(ZeroChange):
        clausius_dominated_level(b, BathSpec([0, 2], 0.5, "hot"), params)
    with pytest.raises(AmbiguousMaximum):
        clausius_dominated_level(BathSpec([-1, 1], 1.0), BathSpec([0, 0], 0.5, "hot"), params)


@given(bath_pairs())
def test_dominated_level_sign_rule(inst):
    try:
        dom = clausius_dominated_level(*inst)
    except (AmbiguousMaximum, ZeroChange):
        return
    assert dom["sign_match"]


def test_purity_examples():
    p_c = gibbs_population(BathSpec([0, 1, 2], 1.0))
    p_h = gibbs_population(BathSpec([0, 1, 2], 0.2))
    assert purity_change_from_populations(p_c, p_h, 1.0)["total"] == pytest.approx(0.0, abs=1e-15)
    zero = purity_change_from_populations(p_c, p_c, 0.5)
    assert zero == {"delta_p_hot": 0.0, "delta_p_cold": 0.0, "total": 0.0}
    # refrigerator below the Carnot point
    cold, hot, _ = two_level(0.5, 2.0)
    params = CycleParams(0.6)
    assert cycle_observables(cold, hot, params).mode is Mode.REFRIGERATOR
    pc = purity_change(cold, hot, params)
    assert pc["delta_p_cold"] > 0 and pc["delta_p_hot"] < 0 and pc["total"] < 0


def test_purity_by_hand():
    # p_c = (1, 0), p_h = (1/2, 1/2), x~ = 1/2: k = 1/3, dp = (-1/6, 1/6)
    pc = purity_change_from_populations([1.0, 0.0], [0.5, 0.5], 0.5)
    hot_after = np.array([0.5 + 1 / 6, 0.5 - 1 / 6])
    cold_after = np.array([1 - 1 / 6, 1 / 6])
    assert pc["delta_p_hot"] == pytest.approx(purity(hot_after) - 0.5, abs=1e-15)
    assert pc["delta_p_cold"] == pytest.approx(purity(cold_after) - 1.0, abs=1e-15)
    # -c g |p_h - p_c|^2 with g = (1/2)(1/2)/(3/2)^2 = 1/9 and |.|^2 = 1/2
    assert pc["total"] == pytest.approx(-PURITY_COEFFICIENT / 18, abs=1e-15)


@given(populations(), st.floats(0.01, 1.0), st.data())
def test_purity_total_law(p_c, xt, data):
    p_h = data.draw(populations(p_c.size))
    pc = purity_change_from_populations(p_c, p_h, xt)
    assert pc["total"] <= 1e-12
    expect = -PURITY_COEFFICIENT * purity_prefactor(xt) * np.sum((p_h - p_c) ** 2)
    assert pc["total"] == pytest.approx(expect, abs=1e-12)
    lb = purity_change_lower_bound_from_populations(p_c, p_h, xt)
    assert abs(pc["total"]) >= lb - 1e-15


def test_purity_lower_bound_is_zero_for_equal_purities():
    cold, hot = BathSpec([0, 1], 1.0), BathSpec([1, 0], 1.0, "hot")
    assert purity_change_lower_bound(cold, hot, CycleParams(0.5)) == pytest.approx(0.0, abs=1e-15)


def test_fitted_purity_coefficient(rng):
    pairs = [(rng.dirichlet(np.ones(4)), rng.dirichlet(np.ones(4))) for _ in range(200)]
    xts = rng.uniform(0.01, 0.99, 200)
    assert fit_purity_coefficient(pairs, xts) == pytest.approx(4.0, abs=1e-10)
