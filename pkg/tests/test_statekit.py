import numpy as np
import pytest
from hypothesis import given, strategies as st

from swapengine.errors import InvalidBath, InvalidPopulation, LengthMismatch, SupportMismatch, UltraHotTemperature, XOutOfRange
from swapengine.statekit import (
    BathSpec,
    CycleParams,
    as_population,
    bhattacharyya_overlap,
    centered_energy,
    gibbs_population,
    jeffreys_divergence,
    kl_divergence,
    mutual_coincidence,
    purity,
    renormalize,
    shannon_entropy,
    wootters_distance,
)

from conftest import bath_pairs, populations, spectra


def test_gibbs_low_temperature_ground_state():
    p = gibbs_population(BathSpec([0, 1], 50.0))
    assert p[0] == pytest.approx(1.0)
    assert p[1] == pytest.approx(np.exp(-50), rel=1e-12)


def test_gibbs_infinite_temperature_is_uniform():
    p = gibbs_population(BathSpec([0, 3, 7, 11], 0.0))
    np.testing.assert_allclose(p, 0.25, atol=1e-15)


def test_gibbs_three_levels_by_hand():
    w = np.array([1, np.exp(-1), np.exp(-2)])
    np.testing.assert_allclose(gibbs_population(BathSpec([0, 1, 2], 1.0)), w / w.sum(), atol=1e-15)


def test_gibbs_huge_energies_do_not_overflow():
    p = gibbs_population(BathSpec([-1e4, 0, 1e4], 1.0))
    assert np.all(np.isfinite(p)) and p[0] == 1.0


@given(spectra(), st.floats(0, 10), st.floats(-50, 50))
def test_gibbs_shift_invariance(e, beta, c):
    np.testing.assert_allclose(gibbs_population(BathSpec(e, beta)), gibbs_population(BathSpec(e + c, beta)), atol=1e-12)


def test_bath_validation():
    with pytest.raises(InvalidBath):
        BathSpec([1.0], 1.0)
    with pytest.raises(InvalidBath):
        BathSpec([0, np.nan], 1.0)
    with pytest.raises(InvalidBath):
        BathSpec([0, 1], -0.1)
    with pytest.raises(InvalidBath):
        BathSpec.from_temperature([0, 1], 0.0)
    with pytest.raises(InvalidBath):
        BathSpec([0, 1], 1.0, "warm")


def test_bath_energies_are_frozen():
    b = BathSpec([0, 1], 1.0)
    with pytest.raises(ValueError):
        b.energies[0] = 5.0


def test_temperature_accessor():
    assert BathSpec.from_temperature([0, 1], 4.0).beta == 0.25
    assert BathSpec([0, 1], 0.5).temperature == 2.0
    with pytest.raises(UltraHotTemperature):
        BathSpec([0, 1], 0.0).temperature


def test_free_energy_matches_log_partition():
    b = BathSpec([0, 1, 2.5], 0.7)
    z = np.exp(-0.7 * b.energies).sum()
    assert b.free_energy == pytest.approx(-np.log(z) / 0.7, rel=1e-13)


def test_cycle_params():
    assert CycleParams(0.5, 0.4).x_tilde == pytest.approx(0.2)
    with pytest.raises(XOutOfRange):
        CycleParams(1.2)
    with pytest.raises(XOutOfRange):
        CycleParams(0.5, -0.1)


def test_as_population_validation():
    with pytest.raises(InvalidPopulation):
        as_population([0.5, 0.6])
    with pytest.raises(InvalidPopulation):
        as_population([1.5, -0.5])
    with pytest.raises(InvalidPopulation):
        as_population([])
    np.testing.assert_array_equal(as_population([0.25, 0.75]), [0.25, 0.75])


def test_renormalize_rejects_large_drift():
    np.testing.assert_allclose(renormalize([0.5, 0.5 + 1e-12]).sum(), 1.0, atol=1e-15)
    with pytest.raises(InvalidPopulation):
        renormalize([0.5, 0.51])


def test_shannon_examples():
    assert shannon_entropy([1.0, 0.0]) == 0.0
    assert shannon_entropy(np.full(5, 0.2)) == pytest.approx(np.log(5), rel=1e-14)
    assert shannon_entropy([0.5, 0.25, 0.25]) == pytest.approx(1.5 * np.log(2), rel=1e-14)


def test_purity_examples():
    assert purity([1, 0, 0]) == 1.0
    assert purity(np.full(4, 0.25)) == pytest.approx(0.25)
    assert purity([0.7, 0.3]) == pytest.approx(0.58, abs=1e-15)


def test_coincidence_examples():
    assert mutual_coincidence([1, 0], [1, 0]) == 1.0
    assert mutual_coincidence([1, 0], [0, 1]) == 0.0
    with pytest.raises(LengthMismatch):
        mutual_coincidence([1, 0], [1, 0, 0])


@given(populations(4), populations(4))
def test_coincidence_of_comonotone_distributions_beats_uniform(p, q):
    # Chebyshev's sum inequality once both are sorted the same way
    assert mutual_coincidence(np.sort(p), np.sort(q)) >= 0.25 - 1e-15


def test_kl_examples():
    p = [0.9, 0.1]
    assert kl_divergence(p, p) == 0.0
    assert kl_divergence(p, [0.5, 0.5]) == pytest.approx(0.9 * np.log(1.8) + 0.1 * np.log(0.2), rel=1e-14)
    with pytest.raises(SupportMismatch):
        kl_divergence([0.5, 0.5], [1.0, 0.0])
    assert kl_divergence([1.0, 0.0], [0.5, 0.5]) == pytest.approx(np.log(2))


@given(populations(), st.data())
def test_divergence_properties(p, data):
    q = data.draw(populations(p.size))
    assert kl_divergence(p, q) >= -1e-15
    assert jeffreys_divergence(p, q) == pytest.approx(jeffreys_divergence(q, p), abs=1e-14)
    assert jeffreys_divergence(p, q) >= 16 / np.pi**2 * wootters_distance(p, q) ** 2 - 1e-12
    assert abs(kl_divergence(p, p)) <= 1e-12


def test_wootters_examples():
    assert wootters_distance([0.3, 0.7], [0.3, 0.7]) == pytest.approx(0.0, abs=1e-7)
    assert wootters_distance([1, 0], [0, 1]) == pytest.approx(np.pi / 2)
    assert bhattacharyya_overlap([0.5, 0.5], [0.5, 0.5]) == pytest.approx(1.0)


@given(populations())
def test_single_population_inequalities(p):
    n = p.size
    assert purity(p) >= np.exp(-shannon_entropy(p)) - 1e-15
    assert 1 / n - 1e-15 <= purity(p) <= 1 + 1e-15
    assert 0 <= shannon_entropy(p) <= np.log(n) + 1e-12


@given(bath_pairs())
def test_wootters_range_and_jeffreys_on_gibbs(inst):
    cold, hot, _ = inst
    p, q = gibbs_population(cold), gibbs_population(hot)
    assert 0 <= wootters_distance(p, q) <= np.pi / 2
    assert jeffreys_divergence(p, q) >= 16 / np.pi**2 * wootters_distance(p, q) ** 2 - 1e-12


def test_centered_energy_examples():
    np.testing.assert_allclose(centered_energy(BathSpec([0, 2], 1.0)), [-1, 1])
    np.testing.assert_allclose(centered_energy([3, 3, 3]), 0.0)
    np.testing.assert_allclose(centered_energy([0, 1, 5]), [-2, -1, 3])


@given(spectra())
def test_centered_energy_sums_to_zero(e):
    assert abs(centered_energy(e).sum()) <= 1e-12
