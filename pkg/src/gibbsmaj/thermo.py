"""Gibbs states, thermal ladder dissipators, GKSL dynamics, thermal operations.

The dissipative coupling of an n-level system to a bath at temperature T
is modelled by a GKSL master equation whose jump operators are weighted
ladder operators in the energy eigenbasis; their rates detailed-balance
the Boltzmann populations, so the Gibbs state is stationary.  Thermal
operations arise from energy-conserving unitaries on system plus bath.
"""

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, NamedTuple, Sequence

import numpy as np

from . import linalg
from .channels import ChoiMatrix, choi_from_map


class PositivityLossError(RuntimeError):
    """The integrated state drifted significantly outside the PSD cone."""


class EnergyConservationViolatedError(ValueError):
    """The proposed unitary does not commute with the total Hamiltonian."""


def gibbs_state(H, T) -> np.ndarray:
    """exp(-H/T) / tr(exp(-H/T)); T = inf gives the maximally mixed state."""
    H = linalg.as_hermitian(H)
    n = H.shape[0]
    if T == math.inf:
        return np.eye(n, dtype=complex) / n
    if not (T > 0):
        raise ValueError("temperature must be positive (or infinite)")
    w, U = np.linalg.eigh(H)
    # Shift by the ground energy before exponentiating to avoid overflow.
    z = np.exp(-(w - w.min()) / T)
    return (U * (z / z.sum())) @ U.conj().T


@dataclass(frozen=True)
class GibbsContext:
    """System Hamiltonian plus temperature, with cached spectral data."""
    H_S: np.ndarray
    T: float

    def __post_init__(self):
        object.__setattr__(self, "H_S", linalg.as_hermitian(self.H_S))
        if not (self.T > 0):
            raise ValueError("temperature must be positive (or infinite)")

    @property
    def n(self) -> int:
        return self.H_S.shape[0]

    @cached_property
    def eig(self) -> linalg.Eigendecomposition:
        return linalg.eig_hermitian(self.H_S)

    @property
    def energies(self) -> np.ndarray:
        return self.eig.eigenvalues

    @cached_property
    def gibbs(self) -> np.ndarray:
        return gibbs_state(self.H_S, self.T)


class LadderPair(NamedTuple):
    sigma_plus: np.ndarray
    sigma_minus: np.ndarray


def ladder_operators(ctx: GibbsContext) -> LadderPair:
    """Thermally weighted ladder operators in the energy eigenbasis.

    The j-th raising amplitude is sqrt(j (n-j) w_j) with the Boltzmann
    weight w_j = e^{-E_j/T} / (e^{-E_j/T} + e^{-E_{j+1}/T}); the lowering
    amplitudes carry the complementary weight 1 - w_j.
    """
    if ctx.T == math.inf:
        raise ValueError("ladder operators require a finite temperature")
    n = ctx.n
    E, U = ctx.eig
    sp = np.zeros((n, n), dtype=complex)
    sm = np.zeros((n, n), dtype=complex)
    for j in range(1, n):                      # j = 1 .. n-1
        # w_j computed as a logistic of the gap for overflow safety.
        w = 1.0 / (1.0 + np.exp(-(E[j] - E[j - 1]) / ctx.T))
        amp = np.sqrt(j * (n - j))
        sp[j - 1, j] = amp * np.sqrt(w)
        sm[j, j - 1] = amp * np.sqrt(1.0 - w)
    return LadderPair(U @ sp @ U.conj().T, U @ sm @ U.conj().T)


def _as_time_function(u) -> Callable[[float], float]:
    if callable(u):
        return u
    val = float(u)
    return lambda t: val


@dataclass
class GKSLSystem:
    """Controlled GKSL generator: drift H0, control Hamiltonians with
    amplitudes u_j(t), dissipation strength gamma(t), jump operators V_j."""
    H0: np.ndarray
    controls: Sequence[tuple[np.ndarray, object]] = field(default_factory=list)
    gamma: object = 1.0
    dissipators: Sequence[np.ndarray] = field(default_factory=list)

    def __post_init__(self):
        self.H0 = linalg.as_hermitian(self.H0)
        n = self.H0.shape[0]
        self.controls = [(linalg.as_hermitian(H), _as_time_function(u))
                         for H, u in self.controls]
        self.dissipators = [linalg.as_matrix(V) for V in self.dissipators]
        for V in self.dissipators:
            if V.shape != (n, n):
                raise ValueError("dissipator dimension mismatch")
        self.gamma = _as_time_function(self.gamma)

    @property
    def n(self) -> int:
        return self.H0.shape[0]

    def hamiltonian(self, t: float) -> np.ndarray:
        H = self.H0
        for Hj, uj in self.controls:
            H = H + uj(t) * Hj
        return H


def thermal_gksl(ctx: GibbsContext, gamma=1.0) -> GKSLSystem:
    """Uncontrolled thermal system: drift H_S with the ladder-pair dissipators."""
    sp, sm = ladder_operators(ctx)
    return GKSLSystem(H0=ctx.H_S, gamma=gamma, dissipators=[sp, sm])


def _dissipator(Vs, rho):
    out = np.zeros_like(rho)
    for V in Vs:
        VV = V.conj().T @ V
        out += 0.5 * (VV @ rho + rho @ VV) - V @ rho @ V.conj().T
    return out


def gksl_rhs(sys: GKSLSystem, rho, t: float = 0.0) -> np.ndarray:
    """Right-hand side -i[H(t), rho] - gamma(t) Gamma(rho); hermitian and traceless."""
    rho = np.asarray(rho, dtype=complex)
    H = sys.hamiltonian(t)
    out = -1j * (H @ rho - rho @ H) - sys.gamma(t) * _dissipator(sys.dissipators, rho)
    return (out + out.conj().T) / 2


def integrate_gksl(sys: GKSLSystem, rho0, horizon: float, step: float,
                   positivity_tol: float = 1e-6) -> list[tuple[float, np.ndarray]]:
    """Fixed-step RK4 integration of the master equation.

    Returns samples (t, rho(t)) at every step, including t = 0.  Raises
    PositivityLossError when the smallest eigenvalue of a sample drops
    below -positivity_tol (step too large for the dynamics).
    """
    rho = linalg.as_hermitian(rho0, rtol=1e-9)
    if step <= 0 or step > horizon:
        raise ValueError("need 0 < step <= horizon")
    n_steps = int(round(horizon / step))
    out = [(0.0, rho.copy())]
    t = 0.0
    for _ in range(n_steps):
        k1 = gksl_rhs(sys, rho, t)
        k2 = gksl_rhs(sys, rho + 0.5 * step * k1, t + 0.5 * step)
        k3 = gksl_rhs(sys, rho + 0.5 * step * k2, t + 0.5 * step)
        k4 = gksl_rhs(sys, rho + step * k3, t + step)
        rho = rho + (step / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        rho = (rho + rho.conj().T) / 2
        t += step
        lam_min = float(np.linalg.eigvalsh(rho).min())
        if lam_min < -positivity_tol:
            raise PositivityLossError(
                f"lambda_min(rho({t:.6g})) = {lam_min:.3e}; reduce the step size")
        out.append((t, rho.copy()))
    return out


def gksl_superoperator(sys: GKSLSystem, t: float = 0.0) -> np.ndarray:
    """Matrix of the generator on vectorized (row-stacked) n x n matrices."""
    n = sys.n
    L = np.zeros((n * n, n * n), dtype=complex)
    for k in range(n):
        for l in range(n):
            E = np.zeros((n, n), dtype=complex)
            E[k, l] = 1.0
            H = sys.hamiltonian(t)
            out = -1j * (H @ E - E @ H) - sys.gamma(t) * _dissipator(sys.dissipators, E)
            L[:, k * n + l] = out.reshape(-1)
    return L


def propagator(sys: GKSLSystem, t: float) -> ChoiMatrix:
    """Choi matrix of the time-t propagator for constant controls and gamma."""
    n = sys.n
    S = linalg.matrix_exp(t * gksl_superoperator(sys, 0.0))

    def channel(X):
        return (S @ X.reshape(-1)).reshape(n, n)

    return choi_from_map(channel, n)


def covariance_residual(phi: ChoiMatrix, H_S) -> float:
    """max_k || Phi([H, X_k]) - [H, Phi(X_k)] ||_F over a hermitian operator basis."""
    H = linalg.as_hermitian(H_S)
    n = H.shape[0]
    if phi.input_dim != n:
        raise ValueError("dimension mismatch")
    worst = 0.0
    for X in linalg.hermitian_basis(n):
        ad = H @ X - X @ H
        gap = phi.apply(ad) - (H @ phi.apply(X) - phi.apply(X) @ H)
        worst = max(worst, linalg.frobenius(gap))
    return worst


@dataclass(frozen=True)
class ThermalOperation:
    """System and bath Hamiltonians, a global unitary, and the bath temperature."""
    H_S: np.ndarray
    H_R: np.ndarray
    U: np.ndarray
    T: float

    def __post_init__(self):
        object.__setattr__(self, "H_S", linalg.as_hermitian(self.H_S))
        object.__setattr__(self, "H_R", linalg.as_hermitian(self.H_R))
        U = linalg.as_matrix(self.U)
        nm = self.H_S.shape[0] * self.H_R.shape[0]
        if U.shape != (nm, nm):
            raise ValueError("unitary dimension must be n*m")
        if np.abs(U.conj().T @ U - np.eye(nm)).max() > 1e-10:
            raise ValueError("U is not unitary within tolerance")
        object.__setattr__(self, "U", U)

    @property
    def total_hamiltonian(self) -> np.ndarray:
        n, m = self.H_S.shape[0], self.H_R.shape[0]
        return np.kron(self.H_S, np.eye(m)) + np.kron(np.eye(n), self.H_R)


def energy_conservation_check(op: ThermalOperation) -> float:
    """Frobenius norm of [U, H_S (x) id + id (x) H_R]."""
    Htot = op.total_hamiltonian
    return linalg.frobenius(op.U @ Htot - Htot @ op.U)


def build_thermal_operation(op: ThermalOperation, comm_tol: float = 1e-10) -> ChoiMatrix:
    """Choi matrix of rho -> tr_R( U (rho (x) gibbs_R) U* ).

    Refuses unitaries that violate energy conservation beyond comm_tol.
    """
    comm = energy_conservation_check(op)
    if comm > comm_tol:
        raise EnergyConservationViolatedError(
            f"[U, H_total] norm {comm:.3e} exceeds {comm_tol:.1e}")
    n, m = op.H_S.shape[0], op.H_R.shape[0]
    rho_R = gibbs_state(op.H_R, op.T)

    def channel(X):
        big = op.U @ np.kron(X, rho_R) @ op.U.conj().T
        return linalg.partial_trace(big, (n, m), keep="first")

    return choi_from_map(channel, n)


def random_commutant_unitary(H_S, H_R, rng: np.random.Generator,
                             strength: float = 1.0, tol: float = 1e-8) -> np.ndarray:
    """Random unitary commuting with H_S (x) id + id (x) H_R.

    Projects a random hermitian generator onto the commutant (block
    structure over degenerate total-energy eigenspaces) and exponentiates.
    """
    H_S = linalg.as_hermitian(H_S)
    H_R = linalg.as_hermitian(H_R)
    n, m = H_S.shape[0], H_R.shape[0]
    Htot = np.kron(H_S, np.eye(m)) + np.kron(np.eye(n), H_R)
    w, V = np.linalg.eigh(Htot)
    K = linalg.random_hermitian(n * m, rng, scale=strength)
    Kd = V.conj().T @ K @ V
    # Zero out couplings between distinct total-energy levels.
    mask = np.abs(w[:, None] - w[None, :]) <= tol * (1.0 + np.abs(w).max())
    Kd = Kd * mask
    return V @ linalg.matrix_exp(1j * Kd) @ V.conj().T
