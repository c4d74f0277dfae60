"""Ultra-hot expansion, uniform compression, and the quasi-static limit."""
import math
import warnings
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from .collision import population_swap
from .cycle import steady_populations
from .errors import DegenerateSpectrum, SwapEngineError
from .statekit import BathSpec, CycleParams, centered_energy, gibbs_population, shannon_entropy
from .thermo import Mode, first_law

ULTRA_HOT_LIMIT = 0.1
INV_PHI = (math.sqrt(5) - 1) / 2


class UltraHotValidityWarning(UserWarning):
    pass


@dataclass(frozen=True)
class UltraHotReport:
    w_first_order: float
    engine_condition: bool
    compression_ratio: Optional[float] = None
    eta: Optional[float] = None
    w_max: Optional[float] = None
    compression_ratio_numeric: Optional[float] = None
    eta_numeric: Optional[float] = None
    parallel_optimal: Optional[bool] = None


def _ultra_hot_bracket(ec, eh, bc, bh):
    """(bc + bh) Ec.Eh - bc |Ec|^2 - bh |Eh|^2, factored so equal spectra give exactly 0."""
    return float((eh - ec) @ (bc * ec - bh * eh))


def ultra_hot_work(cold: BathSpec, hot: BathSpec, params: CycleParams) -> float:
    """Work to first order in (beta_c, beta_h), in terms of centered energies."""
    if max(cold.beta * cold.gap, hot.beta * hot.gap) > ULTRA_HOT_LIMIT:
        warnings.warn("beta * gap exceeds 0.1; first-order expansion may be poor", UltraHotValidityWarning, stacklevel=2)
    ec, eh = centered_energy(cold), centered_energy(hot)
    xt = params.x_tilde
    return float(xt / (2 - xt) * _ultra_hot_bracket(ec, eh, cold.beta, hot.beta) / ec.size)


def ultra_hot_engine_condition(cold: BathSpec, hot: BathSpec) -> dict:
    """First-order engine test and its norm-ratio relaxation."""
    ec, eh = centered_energy(cold), centered_energy(hot)
    bc, bh = cold.beta, hot.beta
    sufficient = bool(_ultra_hot_bracket(ec, eh, bc, bh) > 0)
    nc, nh = np.linalg.norm(ec), np.linalg.norm(eh)
    ratio_ok = bool(nc > 0 and 1 < nh / nc < bc / bh)
    return {"sufficient": sufficient, "necessary_ratio_ok": ratio_ok}


def ultra_hot_clausius_terms(cold: BathSpec, hot: BathSpec, params: CycleParams) -> np.ndarray:
    """Per-level first-order Clausius terms after the constant offset is dropped.

    dp_i ~ k (beta_c Ec_i - beta_h Eh_i)/N with centered energies, so each
    term is k/N times a square.
    """
    xt = params.x_tilde
    d = cold.beta * centered_energy(cold) - hot.beta * centered_energy(hot)
    return xt / (2 - xt) * d * d / d.size


def uniform_compression_classify(c: float, t_c: float, t_h: float) -> Mode:
    """Operating mode when the hot centered spectrum is C times the cold one.

    Populations coincide at C = T_h/T_c and the work factor vanishes at
    C = 1, which fixes the partition (same as the exact two-level sweep).
    """
    if c <= 0 or not (0 < t_c < t_h):
        raise ValueError("need c > 0 and 0 < t_c < t_h")
    ratio = t_h / t_c
    if math.isclose(c, ratio, rel_tol=1e-12):
        return Mode.DEGENERATE
    if c > ratio:
        return Mode.REFRIGERATOR
    if c > 1 and not math.isclose(c, 1.0, rel_tol=1e-12):
        return Mode.ENGINE
    return Mode.HEATER


def golden_section_max(f, a, b, tol=1e-12):
    """Maximize a unimodal f on [a, b]; returns the abscissa."""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol * max(1.0, abs(a) + abs(b)):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def ultra_hot_optimize(
    hot: BathSpec,
    t_c: float,
    constraint: Literal["fix_hot_norm", "fix_cold_norm"],
    params: CycleParams,
    seed: int = 0,
    n_perturb: int = 200,
) -> UltraHotReport:
    """Best uniform compression ratio in the ultra-hot regime.

    ``hot`` supplies T_h and the reference spectrum. Under ``fix_hot_norm``
    that spectrum is the hot one and the cold one is hot/C; under
    ``fix_cold_norm`` it is taken as the cold spectrum and hot = C * cold.
    """
    ref = centered_energy(hot)
    if np.linalg.norm(ref) == 0:
        raise DegenerateSpectrum("spectrum has zero spread")
    t_h = hot.temperature
    if not (0 < t_c < t_h):
        raise ValueError("need 0 < t_c < t_h")
    bc, bh = 1.0 / t_c, 1.0 / t_h
    k = params.x_tilde / (2 - params.x_tilde)
    n = ref.size

    if constraint == "fix_hot_norm":
        c_opt = t_h / (0.5 * (t_h + t_c))

        def spectra(c):
            return ref / c, ref
    elif constraint == "fix_cold_norm":
        c_opt = 0.5 * (t_h + t_c) / t_c

        def spectra(c):
            return ref, c * ref
    else:
        raise ValueError(f"unknown constraint {constraint!r}")

    def work(c):
        ec, eh = spectra(c)
        return k * _ultra_hot_bracket(ec, eh, bc, bh) / n

    c_num = golden_section_max(work, 1.0, t_h / t_c)
    eta = 1 - 1 / c_opt
    w_max = work(c_opt)

    # at fixed norms, rotating the cold spectrum away from the hot one must cost work
    rng = np.random.default_rng(seed)
    ec_opt, eh_opt = spectra(c_opt)
    norm_c = np.linalg.norm(ec_opt)
    parallel = True
    for _ in range(n_perturb):
        v = ec_opt + rng.normal(scale=rng.uniform(0.01, 1.0) * norm_c / np.sqrt(n), size=n)
        v -= v.mean()
        v *= norm_c / np.linalg.norm(v)
        if k * _ultra_hot_bracket(v, eh_opt, bc, bh) / n > w_max + 1e-12 * abs(w_max):
            parallel = False
            break

    return UltraHotReport(
        w_first_order=w_max,
        engine_condition=bool(w_max > 0),
        compression_ratio=c_opt,
        eta=eta,
        w_max=w_max,
        compression_ratio_numeric=c_num,
        eta_numeric=1 - 1 / c_num,
        parallel_optimal=parallel,
    )


def ultra_hot_max_work(hot: BathSpec, t_c: float, params: CycleParams) -> float:
    """Closed-form maximum first-order work at fixed |Eh_centered|."""
    eh = centered_energy(hot)
    t_h = hot.temperature
    xt = params.x_tilde
    return float(xt / (2 - xt) / eh.size * (t_h - t_c) ** 2 / (4 * t_c * t_h**2) * (eh @ eh))


def nca_comparison(t_c: float, t_h: float) -> dict:
    """Half-Carnot, Curzon-Ahlborn and eta_c/(2 - eta_c), which come out ascending."""
    if not (0 < t_c <= t_h):
        raise ValueError("need 0 < t_c <= t_h")
    eta_c = 1 - t_c / t_h
    out = {
        "eta_half_carnot": 0.5 * eta_c,
        "eta_nca": 1 - math.sqrt(t_c / t_h),
        "eta_sym": eta_c / (2 - eta_c),
    }
    if not (out["eta_half_carnot"] <= out["eta_nca"] + 1e-15 and out["eta_nca"] <= out["eta_sym"] + 1e-15):
        raise SwapEngineError(f"efficiency ordering violated: {out}")
    return out


def quasi_static_check(bath: BathSpec, engine_pop, x: float) -> dict:
    """Entropy change of one scattered bath particle vs its heat over T."""
    p_b = gibbs_population(bath)
    engine_pop = np.asarray(engine_pop, dtype=float)
    _, p_after = population_swap(x, engine_pop, p_b)
    dp_b = p_after - p_b
    ds = shannon_entropy(p_after) - shannon_entropy(p_b)
    dq_over_t = bath.beta * float(dp_b @ bath.energies)
    rel = abs(ds - dq_over_t) / abs(ds) if ds != 0 else 0.0
    return {"ds_exact": ds, "dq_over_t": dq_over_t, "rel_err": rel}


def multi_collision_work(cold: BathSpec, hot: BathSpec, x: float, n: int) -> dict:
    """Steady-state work with n deterministic collisions per thermal stroke.

    Returns the exact work and the estimate -sum_b T_b sum_k dS_b,k built
    from the entropy change of every scattered bath particle.
    """
    p_c, p_h = gibbs_population(cold), gibbs_population(hot)
    x_eff = 1 - (1 - x) ** n
    st = steady_populations(p_c, p_h, x_eff)
    _, _, w = first_law(st.dp, cold.energies, hot.energies)

    def stroke_entropy(p, p_b):
        total = 0.0
        for _ in range(n):
            p, pb_after = population_swap(x, p, p_b)
            total += shannon_entropy(pb_after) - shannon_entropy(p_b)
        return total

    ds_h = stroke_entropy(st.p_A, p_h)
    ds_c = stroke_entropy(st.p_C, p_c)
    w_entropy = -(hot.temperature * ds_h + cold.temperature * ds_c)
    return {"work": w, "work_from_entropy": w_entropy, "ds_hot": ds_h, "ds_cold": ds_c}
