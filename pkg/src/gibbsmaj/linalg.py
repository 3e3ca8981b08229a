"""Dense complex linear-algebra primitives shared by all majorization modules.

Everything here operates on plain numpy arrays.  Hermitian inputs are
validated up front (tolerance 1e-12 relative) so that downstream code can
rely on real spectra without re-checking.
"""

from typing import NamedTuple

import numpy as np
import scipy.linalg

HERMITICITY_RTOL = 1e-12

# Relative band below zero inside which eigenvalues are treated as numerical
# noise and clipped; anything below it means the matrix is genuinely not PSD.
PSD_CLIP_RTOL = 1e-9


class NotPSDError(ValueError):
    """Raised when a matrix expected to be PSD has a significantly negative eigenvalue."""


class Eigendecomposition(NamedTuple):
    eigenvalues: np.ndarray   # real, ascending
    eigenvectors: np.ndarray  # unitary, columns are eigenvectors


def as_matrix(A) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


def as_hermitian(A, rtol: float = HERMITICITY_RTOL) -> np.ndarray:
    """Validate hermiticity and return the symmetrized matrix (A + A*)/2."""
    A = as_matrix(A)
    if A.shape[0] != A.shape[1]:
        raise ValueError(f"hermitian matrix must be square, got shape {A.shape}")
    scale = max(1.0, float(np.abs(A).max(initial=0.0)))
    if np.abs(A - A.conj().T).max(initial=0.0) > rtol * scale:
        raise ValueError("matrix is not hermitian within tolerance")
    return (A + A.conj().T) / 2


def eig_hermitian(A) -> Eigendecomposition:
    """Spectral decomposition of a hermitian matrix, eigenvalues ascending."""
    A = as_hermitian(A)
    w, U = np.linalg.eigh(A)
    return Eigendecomposition(w, U)


def trace_norm(A) -> float:
    """Sum of absolute eigenvalues of a hermitian matrix."""
    A = as_hermitian(A)
    return float(np.abs(np.linalg.eigvalsh(A)).sum())


def frobenius(A) -> float:
    return float(np.linalg.norm(np.asarray(A)))


def is_psd(A, rtol: float = PSD_CLIP_RTOL) -> bool:
    A = as_hermitian(A)
    w = np.linalg.eigvalsh(A)
    scale = max(1.0, float(np.abs(w).max(initial=0.0)))
    return bool(w.min(initial=0.0) >= -rtol * scale)


def psd_sqrt(A, rtol: float = PSD_CLIP_RTOL) -> np.ndarray:
    """Principal square root of a PSD matrix; tiny negative eigenvalues are clipped."""
    A = as_hermitian(A)
    w, U = np.linalg.eigh(A)
    scale = max(1.0, float(np.abs(w).max(initial=0.0)))
    if w.min(initial=0.0) < -rtol * scale:
        raise NotPSDError(f"matrix is not PSD: lambda_min = {w.min():.3e}")
    w = np.clip(w, 0.0, None)
    return (U * np.sqrt(w)) @ U.conj().T


def partial_trace(X, dims: tuple[int, int], keep: str = "first") -> np.ndarray:
    """Partial trace of an (m*n)x(m*n) matrix over one tensor factor.

    ``keep="first"`` traces out the second (size-n) factor and returns an
    m x m matrix; ``keep="second"`` the other way round.
    """
    X = as_matrix(X)
    m, n = dims
    if X.shape != (m * n, m * n):
        raise ValueError(f"matrix shape {X.shape} incompatible with dims {dims}")
    X4 = X.reshape(m, n, m, n)
    if keep == "first":
        return np.einsum("ajbj->ab", X4)
    if keep == "second":
        return np.einsum("jajb->ab", X4)
    raise ValueError(f"keep must be 'first' or 'second', got {keep!r}")


def kron(A, B) -> np.ndarray:
    return np.kron(as_matrix(A), as_matrix(B))


def matrix_exp(A) -> np.ndarray:
    """Matrix exponential; uses the spectral path for hermitian input."""
    A = as_matrix(A)
    if A.shape[0] != A.shape[1]:
        raise ValueError("matrix_exp requires a square matrix")
    scale = max(1.0, float(np.abs(A).max(initial=0.0)))
    if np.abs(A - A.conj().T).max(initial=0.0) <= HERMITICITY_RTOL * scale:
        w, U = np.linalg.eigh((A + A.conj().T) / 2)
        return (U * np.exp(w)) @ U.conj().T
    return scipy.linalg.expm(A)


def hermitian_basis(n: int) -> np.ndarray:
    """Orthonormal (Frobenius) basis of the real space of n x n hermitian matrices.

    Returns an (n^2, n, n) stack: diagonal units first, then symmetric and
    antisymmetric off-diagonal combinations.
    """
    basis = []
    for k in range(n):
        E = np.zeros((n, n), dtype=complex)
        E[k, k] = 1.0
        basis.append(E)
    s = 1.0 / np.sqrt(2.0)
    for k in range(n):
        for l in range(k + 1, n):
            E = np.zeros((n, n), dtype=complex)
            E[k, l] = s
            E[l, k] = s
            basis.append(E)
            E = np.zeros((n, n), dtype=complex)
            E[k, l] = -1j * s
            E[l, k] = 1j * s
            basis.append(E)
    return np.array(basis)


def hermitian_to_coords(A, basis: np.ndarray) -> np.ndarray:
    """Real coordinates of a hermitian matrix in an orthonormal hermitian basis."""
    return np.real(np.einsum("kij,ji->k", basis, np.asarray(A, dtype=complex)))


def coords_to_hermitian(v, basis: np.ndarray) -> np.ndarray:
    return np.tensordot(np.asarray(v, dtype=float), basis, axes=1)


def random_hermitian(n: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    G = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * (G + G.conj().T) / 2


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a Gaussian matrix."""
    G = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    Q, R = np.linalg.qr(G)
    return Q * (np.diag(R) / np.abs(np.diag(R)))
