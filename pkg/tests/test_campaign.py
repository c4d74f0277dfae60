import numpy as np
import pytest

from swapengine.campaign import SWEEP_COLUMNS, SweepSpec, random_instance, run_fuzz, run_sweep
from swapengine.statekit import BathSpec, CycleParams
from swapengine.thermo import Mode

COLD = BathSpec([0, 1], 1.0, "cold")
HOT = BathSpec([0, 2], 0.5, "hot")


def spec(parameter="cold_scale", lo=0.1, hi=3.0, steps=200):
    return SweepSpec(parameter, lo, hi, steps, COLD, HOT, CycleParams(1.0))


def test_sweep_spec_validation():
    with pytest.raises(ValueError):
        spec(lo=2, hi=1)
    with pytest.raises(ValueError):
        spec(steps=1)
    with pytest.raises(ValueError):
        spec(parameter="gamma")


def test_two_step_sweep():
    rows = run_sweep(spec(steps=2))
    assert len(rows) == 2 and tuple(rows[0]) == SWEEP_COLUMNS


def test_sweep_instances():
    cold, hot, params = spec("compression").instance(4.0)
    np.testing.assert_allclose(cold.energies, [0, 0.5])
    _, _, params = spec("x").instance(0.25)
    assert params.x == 0.25
    _, _, params = spec("r").instance(0.5)
    assert params.r == 0.5
    cold, _, _ = spec("beta_c").instance(3.0)
    assert cold.beta == 3.0
    _, hot, _ = spec("beta_h").instance(0.1)
    assert hot.beta == 0.1


def test_cold_gap_sweep_structure():
    rows = run_sweep(spec())
    for row in rows:
        v = row["value"]
        assert row["entropy_production"] >= -1e-12
        assert row["clausius_1"] == pytest.approx(row["entropy_production"], abs=1e-12)
        if 1 < v < 2:
            assert row["mode"] == "Engine" and row["work"] > 0
            assert row["efficiency"] == pytest.approx(1 - v / 2, abs=1e-12)
        elif v < 1:
            assert row["mode"] == "Refrigerator" and row["efficiency"] is None
        elif v > 2:
            assert row["mode"] == "Heater"


def test_random_instance_ranges(rng):
    for _ in range(200):
        cold, hot, params = random_instance(rng, 4)
        assert 2 <= cold.n_levels <= 4 and cold.n_levels == hot.n_levels
        assert hot.beta <= cold.beta and 0.1 <= hot.beta and cold.beta <= 10
        assert np.all((0 <= cold.energies) & (cold.energies <= 5))
        assert 0 < params.x_tilde <= 1


def test_fuzz_is_deterministic_and_clean():
    a = run_fuzz(300, seed=5)
    b = run_fuzz(300, seed=5)
    assert a == b
    assert a["failures"] == 0
    assert a["purity_coefficient_fit"] == pytest.approx(4.0, abs=1e-9)
    assert a["invariants"]["nca_ordering"]["checked"] == 30


def test_two_level_fuzz_checks_gap_ratio_efficiency():
    out = run_fuzz(400, seed=2, max_levels=2)
    assert out["failures"] == 0
    assert out["invariants"]["two_level_efficiency"]["checked"] > 0


def test_fuzz_rejects_bad_arguments():
    with pytest.raises(ValueError):
        run_fuzz(0)
    with pytest.raises(ValueError):
        run_fuzz(10, max_levels=1)
