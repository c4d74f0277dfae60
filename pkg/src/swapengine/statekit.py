"""Value types and statistical functionals on level populations.

Populations are plain 1-D float64 arrays indexed by level identity (never
sorted). ``as_population`` validates one; every function here accepts any
array-like and returns floats or fresh arrays.
"""
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import InvalidBath, InvalidPopulation, LengthMismatch, SupportMismatch, UltraHotTemperature, XOutOfRange

NORM_TOL = 1e-12
DRIFT_TOL = 1e-9


def as_population(p, tol=NORM_TOL) -> np.ndarray:
    """Return ``p`` as a validated probability vector (a new float64 array)."""
    p = np.array(p, dtype=float)
    if p.ndim != 1 or p.size < 1:
        raise InvalidPopulation(f"population must be a non-empty vector, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise InvalidPopulation("population has non-finite entries")
    if np.any(p < -tol) or np.any(p > 1 + tol):
        raise InvalidPopulation("population entries must lie in [0, 1]")
    if abs(p.sum() - 1.0) > tol:
        raise InvalidPopulation(f"population sums to {p.sum()!r}, not 1")
    return np.clip(p, 0.0, 1.0)


def renormalize(p) -> np.ndarray:
    """Absorb rounding drift in a vector that should already sum to one."""
    p = np.asarray(p, dtype=float)
    s = p.sum()
    if abs(s - 1.0) > DRIFT_TOL:
        raise InvalidPopulation(f"normalization drifted to {s!r}")
    return np.clip(p, 0.0, None) / s


def _pair(p, q):
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise LengthMismatch(f"length mismatch: {p.shape} vs {q.shape}")
    return p, q


@dataclass(frozen=True)
class BathSpec:
    """Level energies of the bath particles plus inverse temperature.

    ``beta == 0`` is a legal point (infinite temperature).
    """

    energies: np.ndarray
    beta: float
    label: Literal["cold", "hot"] = "cold"

    def __post_init__(self):
        e = np.array(self.energies, dtype=float)
        if e.ndim != 1 or e.size < 2:
            raise InvalidBath("a bath needs at least two levels")
        if not np.all(np.isfinite(e)):
            raise InvalidBath("bath energies must be finite")
        beta = float(self.beta)
        if not np.isfinite(beta) or beta < 0:
            raise InvalidBath(f"beta must be finite and >= 0, got {self.beta!r}")
        if self.label not in ("cold", "hot"):
            raise InvalidBath(f"label must be 'cold' or 'hot', got {self.label!r}")
        e.flags.writeable = False
        object.__setattr__(self, "energies", e)
        object.__setattr__(self, "beta", beta)

    @classmethod
    def from_temperature(cls, energies, temperature, label="cold"):
        if temperature <= 0:
            raise InvalidBath("temperature must be positive")
        return cls(energies, 1.0 / temperature, label)

    @property
    def n_levels(self) -> int:
        return self.energies.size

    @property
    def temperature(self) -> float:
        if self.beta == 0:
            raise UltraHotTemperature("temperature is infinite at beta = 0")
        return 1.0 / self.beta

    @property
    def gap(self) -> float:
        """E_max - E_min."""
        return float(self.energies.max() - self.energies.min())

    @property
    def free_energy(self) -> float:
        if self.beta == 0:
            raise UltraHotTemperature("free energy is undefined at beta = 0")
        a = -self.beta * self.energies
        amax = a.max()
        return float(-(amax + np.log(np.exp(a - amax).sum())) / self.beta)

    def population(self) -> np.ndarray:
        return gibbs_population(self)

    def shifted(self, c: float) -> "BathSpec":
        return BathSpec(self.energies + c, self.beta, self.label)


@dataclass(frozen=True)
class CycleParams:
    """Swap strength ``x`` and per-stroke collision probability ``r``."""

    x: float
    r: float = 1.0

    def __post_init__(self):
        for name in ("x", "r"):
            v = float(getattr(self, name))
            if not (0.0 <= v <= 1.0):
                raise XOutOfRange(f"{name} must lie in [0, 1], got {v!r}")
            object.__setattr__(self, name, v)

    @property
    def x_tilde(self) -> float:
        """Effective swap x*R, the only combination entering steady-state averages."""
        return self.x * self.r


def gibbs_population(bath: BathSpec) -> np.ndarray:
    a = -bath.beta * bath.energies
    w = np.exp(a - a.max())
    return w / w.sum()


def shannon_entropy(p) -> float:
    """Entropy in nats with 0 ln 0 = 0."""
    p = np.asarray(p, dtype=float)
    nz = p[p > 0]
    return float(-np.sum(nz * np.log(nz)))


def purity(p) -> float:
    p = np.asarray(p, dtype=float)
    return float(p @ p)


def mutual_coincidence(p, q) -> float:
    """Probability that draws from ``p`` and ``q`` land on the same level."""
    p, q = _pair(p, q)
    return float(p @ q)


def kl_divergence(p, q) -> float:
    p, q = _pair(p, q)
    mask = p > 0
    if np.any(q[mask] <= 0):
        raise SupportMismatch("q vanishes where p does not")
    return float(np.sum(p[mask] * np.log(p[mask] / q[mask])))


def jeffreys_divergence(p, q) -> float:
    return kl_divergence(p, q) + kl_divergence(q, p)


def bhattacharyya_overlap(p, q) -> float:
    p, q = _pair(p, q)
    return float(np.sum(np.sqrt(p * q)))


def wootters_distance(p, q) -> float:
    return float(np.arccos(np.clip(bhattacharyya_overlap(p, q), -1.0, 1.0)))


def centered_energy(bath_or_energies) -> np.ndarray:
    e = bath_or_energies.energies if isinstance(bath_or_energies, BathSpec) else np.asarray(bath_or_energies, dtype=float)
    return e - e.mean()
