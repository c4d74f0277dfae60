"""Multilevel four-stroke partial-swap heat engine: steady states, thermodynamics, bounds."""
from .bounds import BoundReport, efficiency_bounds, engine_necessary_condition, refrigerator_necessary_condition, work_bounds
from .collision import (
    collide,
    collision_correlations,
    density_swap,
    multilevel_swap_unitary,
    population_swap,
    qubit_swap_unitary,
)
from .cycle import SteadyState, markov_cycle_operator, steady_populations, steady_state_by_iteration
from .errors import SwapEngineError
from .montecarlo import SimConfig, Trajectory, simulate, simulate_bath_backreaction
from .regimes import (
    UltraHotReport,
    nca_comparison,
    quasi_static_check,
    ultra_hot_engine_condition,
    ultra_hot_optimize,
    ultra_hot_work,
    uniform_compression_classify,
)
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
from .thermo import (
    CycleReport,
    Mode,
    clausius_dominated_level,
    clausius_number,
    cycle_observables,
    purity_change,
    purity_change_lower_bound,
)

__version__ = "0.1.0"
