"""Steady state of the four-stroke cycle, two ways.

``steady_populations`` is the closed form; ``steady_state_by_iteration``
power-iterates the per-stroke Markov operators. Both stay public so each can
check the other.
"""
from dataclasses import dataclass

import numpy as np

from .collision import density_swap
from .errors import DegenerateCycle, LengthMismatch, NoConvergence, XOutOfRange
from .statekit import CycleParams, renormalize


@dataclass(frozen=True)
class SteadyState:
    p_A: np.ndarray  # engine at the start of stroke A, after the cold stroke
    p_C: np.ndarray  # after the hot stroke
    dp: np.ndarray  # p_C - p_A, sums to zero
    x_tilde: float

    @property
    def prefactor(self) -> float:
        """x~/(2 - x~), the factor multiplying p_h - p_c in dp."""
        return self.x_tilde / (2.0 - self.x_tilde)


def _x_tilde(params):
    return params.x_tilde if isinstance(params, CycleParams) else float(params)


def steady_populations(p_c, p_h, params) -> SteadyState:
    """Closed-form steady state; ``params`` is a CycleParams or the bare x~."""
    p_c = np.asarray(p_c, dtype=float)
    p_h = np.asarray(p_h, dtype=float)
    if p_c.shape != p_h.shape:
        raise LengthMismatch(f"{p_c.shape} vs {p_h.shape}")
    xt = _x_tilde(params)
    if not (0.0 <= xt <= 1.0):
        raise XOutOfRange(f"x*R must lie in [0, 1], got {xt!r}")
    if xt == 0:
        raise DegenerateCycle("x*R = 0 leaves every population stationary")
    p_C = renormalize((p_h + p_c - xt * p_c) / (2.0 - xt))
    p_A = renormalize((p_h + p_c - xt * p_h) / (2.0 - xt))
    return SteadyState(p_A, p_C, xt / (2.0 - xt) * population_difference(p_h, p_c), xt)


def population_difference(p, q) -> np.ndarray:
    """p - q with the sum-to-zero constraint imposed on the dominant level.

    Entries near 1 lose their low digits to cancellation; rebuilding the
    largest one from the (relatively accurate) small entries keeps tiny
    differences accurate.
    """
    d = np.asarray(p, dtype=float) - np.asarray(q, dtype=float)
    j = int(np.argmax(np.asarray(p) + np.asarray(q)))
    d[j] = -(np.sum(d[:j]) + np.sum(d[j + 1 :]))
    return d


def markov_cycle_operator(p_target, x_tilde) -> np.ndarray:
    """Column-stochastic K = x~ |p_target><1| + (1 - x~) I."""
    if not (0.0 <= x_tilde <= 1.0):
        raise XOutOfRange(f"x~ must lie in [0, 1], got {x_tilde!r}")
    p = np.asarray(p_target, dtype=float)
    return x_tilde * np.outer(p, np.ones_like(p)) + (1.0 - x_tilde) * np.eye(p.size)


def _power_iterate(k, tol, max_iter):
    n = k.shape[0]
    p = np.full(n, 1.0 / n)
    for it in range(1, max_iter + 1):
        nxt = k @ p
        nxt /= nxt.sum()
        if np.abs(nxt - p).sum() < tol:
            return nxt, it
        p = nxt
    raise NoConvergence(f"power iteration did not reach tol={tol} in {max_iter} steps")


def steady_state_by_iteration(k_cold, k_hot, tol=1e-13, max_iter=1_000_000):
    """Fixed points (p_A, p_C) of K_c K_h and K_h K_c by power iteration from uniform."""
    k_cold = np.asarray(k_cold, dtype=float)
    k_hot = np.asarray(k_hot, dtype=float)
    p_A, _ = _power_iterate(k_cold @ k_hot, tol, max_iter)
    p_C, _ = _power_iterate(k_hot @ k_cold, tol, max_iter)
    return p_A, p_C


def iterate_density_cycle(rho0, rho_c, rho_h, x, n_cycles, phases_h=None, phases_c=None):
    """Run full density matrices through ``n_cycles`` cycles of density swaps.

    Adiabatic strokes keep populations and rotate coherences by the optional
    per-level phases. Returns the state at the start of stroke A.
    """
    rho = np.array(rho0, dtype=complex)
    n = rho.shape[0]
    ph = np.ones(n) if phases_h is None else np.exp(-1j * np.asarray(phases_h))
    pc = np.ones(n) if phases_c is None else np.exp(-1j * np.asarray(phases_c))
    uh, uc = np.diag(ph), np.diag(pc)
    for _ in range(n_cycles):
        rho = uh @ rho @ uh.conj().T
        rho, _ = density_swap(x, rho, rho_h)
        rho = uc @ rho @ uc.conj().T
        rho, _ = density_swap(x, rho, rho_c)
    return rho
