"""D-majorization on hermitian matrices.

A is D-majorized by B when some CPTP map sends B to A while fixing the
positive definite reference D.  The general decision procedure minimizes
the distance from A to the image of B under CPTP D-fixing maps, a convex
program over Choi matrices; a zero optimum is a feasibility certificate
and a positive one an infeasibility margin.  On qubits a closed-form
trace-norm / generalized-fidelity characterization is available and much
cheaper.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg
from .vectors import d_majorizes

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
UNDECIDED = "undecided"

DEFAULT_FEAS_TOL = 1e-7
DEFAULT_MAX_ITERS = 50000
MAX_FEASIBILITY_DIM = 4


class DisagreementError(RuntimeError):
    """The diagonal feasibility check and the vector-level test disagree."""


@dataclass(frozen=True)
class GibbsReference:
    """Positive definite fixed-point matrix with cached spectral data."""
    D: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "D", linalg.as_hermitian(self.D))
        w = np.linalg.eigvalsh(self.D)
        if w.min() <= 0:
            raise ValueError("reference matrix must be positive definite")

    @cached_property
    def eig(self) -> linalg.Eigendecomposition:
        return linalg.eig_hermitian(self.D)

    @property
    def n(self) -> int:
        return self.D.shape[0]

    @cached_property
    def inv_sqrt(self) -> np.ndarray:
        w, U = self.eig
        return (U / np.sqrt(w)) @ U.conj().T

    @cached_property
    def gibbs(self) -> np.ndarray:
        """The normalized state D / tr(D)."""
        return self.D / np.trace(self.D).real


@dataclass(frozen=True)
class ChoiMatrix:
    """Choi matrix J = sum_kl E_kl (x) T(E_kl) of a linear map T on n x n matrices."""
    J: np.ndarray
    input_dim: int

    def __post_init__(self):
        J = linalg.as_hermitian(self.J, rtol=1e-9)
        n = self.input_dim
        if J.shape != (n * n, n * n):
            raise ValueError(f"Choi matrix must be {n*n}x{n*n}")
        object.__setattr__(self, "J", J)

    def apply(self, X) -> np.ndarray:
        return apply_choi(self, X)

    def cp_residual(self) -> float:
        w = np.linalg.eigvalsh(self.J)
        return float(max(0.0, -w.min()))

    def tp_residual(self) -> float:
        n = self.input_dim
        tp = linalg.partial_trace(self.J, (n, n), keep="first")
        return float(np.abs(tp - np.eye(n)).max())

    def is_cptp(self, tol: float = 1e-7) -> bool:
        return self.cp_residual() <= tol and self.tp_residual() <= tol


def _apply_raw(Jarray: np.ndarray, X: np.ndarray, n: int) -> np.ndarray:
    return np.einsum("kl,kalb->ab", X, Jarray.reshape(n, n, n, n))


def apply_choi(J: ChoiMatrix, X) -> np.ndarray:
    X = linalg.as_matrix(X)
    n = J.input_dim
    if X.shape != (n, n):
        raise ValueError(f"expected a {n}x{n} matrix, got {X.shape}")
    return _apply_raw(J.J, X, n)


def choi_from_map(fn, n: int) -> ChoiMatrix:
    """Choi matrix of the linear map given as a callable on n x n matrices."""
    J = np.zeros((n * n, n * n), dtype=complex)
    for k in range(n):
        for l in range(n):
            E = np.zeros((n, n), dtype=complex)
            E[k, l] = 1.0
            out = np.asarray(fn(E), dtype=complex)
            J4 = J.reshape(n, n, n, n)
            J4[k, :, l, :] = out
    return ChoiMatrix((J + J.conj().T) / 2, n)


def choi_identity(n: int) -> ChoiMatrix:
    return choi_from_map(lambda X: X, n)


def choi_constant(sigma) -> ChoiMatrix:
    """Choi matrix of X -> tr(X) sigma (sigma unit trace)."""
    sigma = linalg.as_matrix(sigma)
    n = sigma.shape[0]
    return ChoiMatrix(np.kron(np.eye(n), sigma), n)


def choi_from_kraus(kraus_ops) -> ChoiMatrix:
    ops = [linalg.as_matrix(V) for V in kraus_ops]
    n = ops[0].shape[0]
    return choi_from_map(lambda X: sum(V @ X @ V.conj().T for V in ops), n)


def choi_unitary(U) -> ChoiMatrix:
    return choi_from_kraus([U])


def compose_choi(J2: ChoiMatrix, J1: ChoiMatrix) -> ChoiMatrix:
    """Choi matrix of the composition X -> T2(T1(X))."""
    n = J1.input_dim
    return choi_from_map(lambda X: J2.apply(J1.apply(X)), n)


def mix_choi(weights, chois) -> ChoiMatrix:
    n = chois[0].input_dim
    J = sum(w * C.J for w, C in zip(weights, chois))
    return ChoiMatrix(J, n)


@dataclass
class FeasibilityVerdict:
    status: str
    certificate: ChoiMatrix | None
    residual: float
    iterations: int

    @property
    def feasible(self) -> bool:
        return self.status == FEASIBLE


def reduce_to_diagonal(A, B, ref: GibbsReference):
    """Rotate (A, B) into the eigenbasis of D; returns (A', B', d).

    D-majorization is invariant under simultaneous unitary conjugation, so
    any downstream verdict is unchanged by this reduction.
    """
    A = linalg.as_hermitian(A)
    B = linalg.as_hermitian(B)
    w, U = ref.eig
    Uc = U.conj().T
    return Uc @ A @ U, Uc @ B @ U, w.copy()


def _solve_min_distance(A, B, Dmat, n, max_iters):
    """Minimize ||T(B) - A||_F over CPTP maps T with T(D) = D.

    The feasible set is never empty (the constant map onto D / tr(D) is in
    it), so the optimal value is a distance-to-feasibility margin: zero iff
    some CPTP D-fixing map sends B to A.
    """
    import cvxpy as cp

    J = cp.Variable((n * n, n * n), hermitian=True)
    I = np.eye(n)
    TB = cp.partial_trace(cp.kron(B.T, I) @ J, [n, n], axis=0)
    TD = cp.partial_trace(cp.kron(Dmat.T, I) @ J, [n, n], axis=0)
    constraints = [
        J >> 0,
        cp.partial_trace(J, [n, n], axis=1) == I,
        TD == Dmat,
    ]
    prob = cp.Problem(cp.Minimize(cp.norm(TB - A, "fro")), constraints)
    try:
        prob.solve(solver=cp.CLARABEL)
    except cp.error.SolverError:
        prob.solve(solver=cp.SCS, eps=1e-9, max_iters=max_iters)
    if prob.status not in ("optimal", "optimal_inaccurate"):
        prob.solve(solver=cp.SCS, eps=1e-9, max_iters=max_iters)
    stats = prob.solver_stats
    iters = int(stats.num_iters) if stats and stats.num_iters is not None else 0
    return prob.status, prob.value, J.value, iters


def cptp_feasibility(A, B, ref: GibbsReference, *,
                     feas_tol: float = DEFAULT_FEAS_TOL,
                     max_iters: int = DEFAULT_MAX_ITERS) -> FeasibilityVerdict:
    """Decide whether a CPTP map T with T(B) = A and T(D) = D exists.

    Solves the convex program min ||T(B) - A||_F over the (never empty) set
    of CPTP D-fixing maps.  An optimal value at or below ``feas_tol`` is
    Feasible with the optimizer as Choi certificate; a value above
    ``10 * feas_tol`` is Infeasible; the band in between, or a solver
    breakdown, is reported as Undecided rather than coerced.
    """
    A = linalg.as_hermitian(A)
    B = linalg.as_hermitian(B)
    n = ref.n
    if A.shape != (n, n) or B.shape != (n, n):
        raise ValueError("dimension mismatch between A, B and the reference")
    if n > MAX_FEASIBILITY_DIM:
        raise ValueError(f"feasibility search supported up to n = {MAX_FEASIBILITY_DIM}")
    tr_gap = abs(np.trace(A).real - np.trace(B).real)
    if tr_gap > 1e-9 * (1.0 + abs(np.trace(B).real)):
        # Trace preservation forces tr T(B) = tr B, so no map can exist.
        return FeasibilityVerdict(INFEASIBLE, None, float(tr_gap), 0)

    try:
        status, value, Jval, iters = _solve_min_distance(A, B, ref.D, n, max_iters)
    except Exception:
        return FeasibilityVerdict(UNDECIDED, None, float("inf"), 0)
    if value is None or status not in ("optimal", "optimal_inaccurate"):
        return FeasibilityVerdict(UNDECIDED, None, float("inf"), iters)

    residual = float(value)
    if residual <= feas_tol:
        # Clip solver-level negative eigenvalue noise before certifying.
        w, U = np.linalg.eigh((Jval + Jval.conj().T) / 2)
        Jpsd = (U * np.clip(w, 0.0, None)) @ U.conj().T
        return FeasibilityVerdict(FEASIBLE, ChoiMatrix(Jpsd, n), residual, iters)
    if residual > 10 * feas_tol:
        return FeasibilityVerdict(INFEASIBLE, None, residual, iters)
    return FeasibilityVerdict(UNDECIDED, None, residual, iters)


def trace_norm_curve_check(A, B, ref: GibbsReference, grid_points: int = 512) -> bool:
    """True iff ||A - tD||_1 <= ||B - tD||_1 for all real t.

    Both sides are piecewise linear in t with kinks at the eigenvalues of
    D^{-1/2} A D^{-1/2} and D^{-1/2} B D^{-1/2}; checked at all kinks,
    midpoints, one point beyond each extreme, and a uniform refinement grid.
    """
    A = linalg.as_hermitian(A)
    B = linalg.as_hermitian(B)
    S = ref.inv_sqrt
    kinks = np.concatenate([
        np.linalg.eigvalsh(S @ A @ S),
        np.linalg.eigvalsh(S @ B @ S),
    ])
    kinks = np.unique(np.sort(kinks))
    lo, hi = kinks[0], kinks[-1]
    span = max(hi - lo, 1.0)
    ts = [kinks]
    if kinks.size > 1:
        ts.append((kinks[:-1] + kinks[1:]) / 2)
    ts.append(np.array([lo - span, hi + span]))
    ts.append(np.linspace(lo, hi, grid_points))
    tol = 1e-9 * (1.0 + linalg.trace_norm(B))
    for t in np.concatenate(ts):
        if linalg.trace_norm(A - t * ref.D) > linalg.trace_norm(B - t * ref.D) + tol:
            return False
    return True


def _generalized_fidelity(X, b1, b2, D, rtol=1e-9):
    lo = linalg.psd_sqrt(X - b1 * D, rtol=rtol)
    hi = linalg.psd_sqrt(b2 * D - X, rtol=rtol)
    return float(np.linalg.svd(lo @ hi, compute_uv=False).sum())


def qubit_dmaj_check(A, B, ref: GibbsReference) -> bool:
    """Closed-form qubit decision: trace equality, two trace-norm inequalities
    at the spectrum of D^{-1/2} B D^{-1/2}, and the generalized-fidelity
    inequality between the square-root factors."""
    A = linalg.as_hermitian(A)
    B = linalg.as_hermitian(B)
    if ref.n != 2 or A.shape != (2, 2) or B.shape != (2, 2):
        raise ValueError("qubit check requires 2x2 matrices")
    tol = 1e-9 * (1.0 + linalg.trace_norm(B))
    if abs(np.trace(A).real - np.trace(B).real) > tol:
        return False
    S = ref.inv_sqrt
    b1, b2 = np.linalg.eigvalsh(S @ B @ S)
    for b in (b1, b2):
        if linalg.trace_norm(A - b * ref.D) > linalg.trace_norm(B - b * ref.D) + tol:
            return False
    try:
        fA = _generalized_fidelity(A, b1, b2, ref.D)
    except linalg.NotPSDError:
        # A outside the [b1, b2] pencil band: the trace-norm curve then
        # fails just outside [b1, b2]; treat as a failing instance.
        return False
    fB = _generalized_fidelity(B, b1, b2, ref.D)
    return fA >= fB - 1e-9


def minimal_element_witness(B, ref: GibbsReference) -> ChoiMatrix:
    """Choi certificate of D being D-majorized by B: the map X -> tr(X) D / tr(D)."""
    B = linalg.as_hermitian(B)
    trB = np.trace(B).real
    trD = np.trace(ref.D).real
    if abs(trB - trD) > 1e-9 * (1.0 + abs(trD)):
        raise ValueError("B must lie in the trace hyperplane tr(B) = tr(D)")
    return choi_constant(ref.gibbs)


def maximal_element_k(ref: GibbsReference) -> int:
    """Index of the minimal eigenvalue of D (lowest index on ties)."""
    return int(np.argmin(ref.eig.eigenvalues))


def maximal_element(ref: GibbsReference, k: int | None = None) -> np.ndarray:
    """The candidate maximal element (e^T d) |v_k><v_k| with v_k the eigvec of min d."""
    w, U = ref.eig
    if k is None:
        k = maximal_element_k(ref)
    v = U[:, k]
    return w.sum() * np.outer(v, v.conj())


def maximal_element_check(B, ref: GibbsReference, k: int | None = None,
                          **solver_kwargs) -> bool:
    """True iff the maximal element D-majorizes the PSD matrix B on the hyperplane."""
    B = linalg.as_hermitian(B)
    if not linalg.is_psd(B):
        raise ValueError("B must be PSD")
    total = ref.eig.eigenvalues.sum()
    if abs(np.trace(B).real - total) > 1e-9 * (1.0 + abs(total)):
        raise ValueError("B must have trace e^T d")
    verdict = cptp_feasibility(B, maximal_element(ref, k), ref, **solver_kwargs)
    return verdict.feasible


def diagonal_reduction_check(x, y, d, **solver_kwargs) -> bool:
    """Cross-check the matrix decision against vector d-majorization on diagonals."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    d = np.asarray(d, dtype=float)
    vec_verdict = d_majorizes(x, y, d)
    ref = GibbsReference(np.diag(d).astype(complex))
    mat = cptp_feasibility(np.diag(x).astype(complex), np.diag(y).astype(complex),
                           ref, **solver_kwargs)
    mat_verdict = mat.feasible if mat.status != UNDECIDED else None
    if mat_verdict is None or mat_verdict != vec_verdict:
        raise DisagreementError(
            f"matrix verdict {mat.status!r} vs vector verdict {vec_verdict!r} "
            f"(residual {mat.residual:.3e}, {mat.iterations} iterations)")
    return vec_verdict
