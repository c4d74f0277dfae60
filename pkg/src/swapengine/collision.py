"""Swap rules and the exact two-particle unitary collision.

The closed-form rules (``density_swap``, ``population_swap``) drive all cycle
math. The unitary machinery below them exists to check those rules from
first principles: build U, conjugate a product state, partial-trace.
"""
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from scipy.linalg import expm

from .errors import AsymmetricPhi, DimMismatch, InvalidDensityMatrix, XOutOfRange
from .statekit import renormalize

MATRIX_TOL = 1e-10
MAX_ORACLE_LEVELS = 16

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def _check_x(x):
    if not (0.0 <= x <= 1.0):
        raise XOutOfRange(f"swap parameter must lie in [0, 1], got {x!r}")


def as_density_matrix(rho, tol=MATRIX_TOL) -> np.ndarray:
    """Validate a Hermitian, unit-trace, positive semidefinite matrix."""
    rho = np.array(rho, dtype=complex)
    if rho.ndim == 1:
        rho = np.diag(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidDensityMatrix(f"expected a square matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise InvalidDensityMatrix("matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > tol:
        raise InvalidDensityMatrix(f"trace is {np.trace(rho)!r}")
    if np.linalg.eigvalsh(rho).min() < -tol:
        raise InvalidDensityMatrix("matrix has negative eigenvalues")
    return rho


def von_neumann_entropy(rho) -> float:
    w = np.linalg.eigvalsh(np.asarray(rho))
    w = w[w > 1e-15]
    return float(-np.sum(w * np.log(w)))


def density_swap(x, rho_s, rho_b):
    """Partial swap of full density matrices; returns (rho_s', rho_b')."""
    _check_x(x)
    rho_s = as_density_matrix(rho_s)
    rho_b = as_density_matrix(rho_b)
    if rho_s.shape != rho_b.shape:
        raise DimMismatch(f"{rho_s.shape} vs {rho_b.shape}")
    delta = x * (rho_b - rho_s)
    return rho_s + delta, rho_b - delta


def population_swap(x, p_s, p_b):
    """Partial swap of level populations; returns (p_s', p_b').

    The bath-side change is the exact negative of the system-side change.
    """
    _check_x(x)
    p_s = np.asarray(p_s, dtype=float)
    p_b = np.asarray(p_b, dtype=float)
    if p_s.shape != p_b.shape:
        raise DimMismatch(f"{p_s.shape} vs {p_b.shape}")
    delta = x * (p_b - p_s)
    return p_s + delta, p_b - delta


@dataclass(frozen=True)
class TwoParticleUnitary:
    matrix: np.ndarray
    n: int
    kind: Literal["qubit-sigma", "multilevel-phase"]
    phi: np.ndarray = field(repr=False)

    def is_unitary(self, tol=MATRIX_TOL) -> bool:
        u = self.matrix
        return bool(np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0]))) <= tol)


@dataclass(frozen=True)
class JointState:
    """Post-collision two-particle state with the entropies of its inputs."""

    rho: np.ndarray
    n: int
    input_entropies: tuple = (0.0, 0.0)

    def reduced(self):
        r = self.rho.reshape(self.n, self.n, self.n, self.n)
        return np.einsum("ijkj->ik", r), np.einsum("ijik->jk", r)


def swap_operator(n) -> np.ndarray:
    """Permutation |ij> -> |ji> on C^n (x) C^n."""
    s = np.zeros((n * n, n * n))
    for i in range(n):
        for j in range(n):
            s[j * n + i, i * n + j] = 1.0
    return s


def pauli_exchange_generator() -> np.ndarray:
    """sum_k sigma_k (x) sigma_k, which equals 2*SWAP - I."""
    return sum(np.kron(s, s) for s in PAULI)


def qubit_swap_unitary(phi) -> TwoParticleUnitary:
    """exp(-i phi/2 sum_k sigma_k (x) sigma_k) by scaling-and-squaring."""
    u = expm(-0.5j * phi * pauli_exchange_generator())
    return TwoParticleUnitary(u, 2, "qubit-sigma", np.array(float(phi)))


def qubit_swap_unitary_closed_form(phi) -> np.ndarray:
    """Same unitary from 2*SWAP - I: e^{i phi/2} (cos phi I - i sin phi SWAP)."""
    return np.exp(0.5j * phi) * (np.cos(phi) * np.eye(4) - 1j * np.sin(phi) * swap_operator(2))


def uniform_phi(n, phi) -> np.ndarray:
    m = np.full((n, n), float(phi))
    np.fill_diagonal(m, 0.0)
    return m


def multilevel_swap_unitary(n, phi) -> TwoParticleUnitary:
    """exp(-iH) for H = sum_ij phi_ij |ij><ji|, assembled block by block.

    Each pair {|ij>, |ji>} sees phi_ij * sigma_x, so it rotates as
    cos(phi_ij) - i sin(phi_ij) sigma_x; |ii> only picks up exp(-i phi_ii).
    """
    phi = np.asarray(phi, dtype=float)
    if phi.shape != (n, n):
        raise DimMismatch(f"phi must be {n}x{n}, got {phi.shape}")
    if n > MAX_ORACLE_LEVELS:
        raise DimMismatch(f"oracle is capped at {MAX_ORACLE_LEVELS} levels")
    if np.max(np.abs(phi - phi.T)) > 0:
        raise AsymmetricPhi("phi must be symmetric")
    u = np.zeros((n * n, n * n), dtype=complex)
    for i in range(n):
        ii = i * n + i
        u[ii, ii] = np.exp(-1j * phi[i, i])
        for j in range(i + 1, n):
            a, b = i * n + j, j * n + i
            c, s = np.cos(phi[i, j]), np.sin(phi[i, j])
            u[a, a] = u[b, b] = c
            u[a, b] = u[b, a] = -1j * s
    return TwoParticleUnitary(u, n, "multilevel-phase", phi.copy())


def multilevel_swap_hamiltonian(n, phi) -> np.ndarray:
    phi = np.asarray(phi, dtype=float)
    h = np.zeros((n * n, n * n))
    for i in range(n):
        for j in range(n):
            h[i * n + j, j * n + i] = phi[i, j]
    return h


def collide(u: TwoParticleUnitary, rho1, rho2):
    """Conjugate rho1 (x) rho2 by U; return both reduced states and the joint state."""
    rho1 = as_density_matrix(rho1)
    rho2 = as_density_matrix(rho2)
    n = u.n
    if rho1.shape != (n, n) or rho2.shape != (n, n):
        raise DimMismatch(f"unitary acts on {n}-level particles, got {rho1.shape} and {rho2.shape}")
    m = u.matrix
    joint = m @ np.kron(rho1, rho2) @ m.conj().T
    js = JointState(joint, n, (von_neumann_entropy(rho1), von_neumann_entropy(rho2)))
    r1, r2 = js.reduced()
    return r1, r2, js


def collide_populations(u: TwoParticleUnitary, p1, p2):
    """Diagonal-in, diagonal-out convenience wrapper around ``collide``."""
    r1, r2, _ = collide(u, np.diag(np.asarray(p1, dtype=complex)), np.diag(np.asarray(p2, dtype=complex)))
    return renormalize(np.real(np.diag(r1))), renormalize(np.real(np.diag(r2)))


def collision_correlations(joint: JointState) -> dict:
    r1, r2 = joint.reduced()
    s1, s2 = von_neumann_entropy(r1), von_neumann_entropy(r2)
    mi = s1 + s2 - von_neumann_entropy(joint.rho)
    gain = s1 + s2 - sum(joint.input_entropies)
    return {"mutual_information": mi, "reduced_entropy_gain": gain}
