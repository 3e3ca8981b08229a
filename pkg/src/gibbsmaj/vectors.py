"""Classical and weighted (d-) majorization on real vectors.

A strictly positive weight vector d plays the role of the fixed point: x is
d-majorized by y when a d-stochastic matrix A (nonnegative, A d = d,
column sums one) maps y to x.  With d = (1, ..., 1) this reduces to
classical majorization via decreasing partial sums.
"""

import numpy as np
from scipy.optimize import linprog

REL_TOL = 1e-10


def _as_vector(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ValueError(f"expected a 1-d array, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError("vector has non-finite entries")
    return x


def check_weights(d) -> np.ndarray:
    d = _as_vector(d)
    if d.size < 1:
        raise ValueError("weight vector must be nonempty")
    if d.min() <= 0:
        raise ValueError("weight vector must be strictly positive")
    return d


def _pair(x, y):
    x, y = _as_vector(x), _as_vector(y)
    if x.size != y.size:
        raise ValueError(f"length mismatch: {x.size} vs {y.size}")
    return x, y


def classical_majorizes(x, y) -> bool:
    """True iff x is majorized by y (partial-sum test on decreasing rearrangements)."""
    x, y = _pair(x, y)
    tol = REL_TOL * (1.0 + np.abs(y).sum())
    if abs(x.sum() - y.sum()) > tol:
        return False
    xs = np.sort(x)[::-1].cumsum()
    ys = np.sort(y)[::-1].cumsum()
    return bool(np.all(xs[:-1] <= ys[:-1] + tol)) if x.size > 1 else True


def d_majorizes(x, y, d) -> bool:
    """1-norm test for x being d-majorized by y.

    Checks equal totals together with
    ``||d_i x - y_i d||_1 <= ||d_i y - y_i d||_1`` for every index i.
    """
    x, y = _pair(x, y)
    d = check_weights(d)
    if d.size != x.size:
        raise ValueError("weight vector length mismatch")
    tol = REL_TOL * (1.0 + np.abs(y).sum() * np.abs(d).sum())
    if abs(x.sum() - y.sum()) > REL_TOL * (1.0 + np.abs(y).sum()):
        return False
    for i in range(d.size):
        lhs = np.abs(d[i] * x - y[i] * d).sum()
        rhs = np.abs(d[i] * y - y[i] * d).sum()
        if lhs > rhs + tol:
            return False
    return True


def is_d_stochastic(A, d, tol: float = 1e-10) -> bool:
    """Entrywise nonnegative, fixes d, and has unit column sums."""
    A = np.asarray(A, dtype=float)
    d = check_weights(d)
    n = d.size
    if A.shape != (n, n):
        raise ValueError(f"expected a {n}x{n} matrix, got {A.shape}")
    if A.min() < -tol:
        return False
    if np.abs(A @ d - d).max() > tol * (1.0 + np.abs(d).max()):
        return False
    return bool(np.abs(A.sum(axis=0) - 1.0).max() <= tol)


def d_stochastic_witness(x, y, d):
    """A d-stochastic matrix A with A y = x, or None if none exists.

    Decided as an LP feasibility problem over the n^2 nonnegative entries.
    """
    x, y = _pair(x, y)
    d = check_weights(d)
    n = d.size
    if d.size != x.size:
        raise ValueError("weight vector length mismatch")
    # Variables a_{ij} = A[i, j], row-major.  Equalities: A d = d,
    # e^T A = e^T, A y = x.
    rows = []
    rhs = []
    for i in range(n):
        r = np.zeros(n * n)
        r[i * n:(i + 1) * n] = d
        rows.append(r)
        rhs.append(d[i])
    for j in range(n):
        r = np.zeros(n * n)
        r[j::n] = 1.0
        rows.append(r)
        rhs.append(1.0)
    for i in range(n):
        r = np.zeros(n * n)
        r[i * n:(i + 1) * n] = y
        rows.append(r)
        rhs.append(x[i])
    res = linprog(c=np.zeros(n * n), A_eq=np.array(rows), b_eq=np.array(rhs),
                  bounds=(0.0, None), method="highs")
    if not res.success:
        return None
    A = res.x.reshape(n, n)
    A = np.clip(A, 0.0, None)
    if np.abs(A @ y - x).max() > 1e-8 * (1.0 + np.abs(x).max()):
        return None
    return A


def random_d_stochastic(d, rng: np.random.Generator, mixing: int = 6) -> np.ndarray:
    """Random d-stochastic matrix: a convex mixture of simple d-stochastic maps.

    Mixes the identity, the rank-one map onto d, and random two-level
    d-stochastic "T-transform" analogues.
    """
    d = check_weights(d)
    n = d.size
    members = [np.eye(n), np.outer(d, np.ones(n)) / d.sum()]
    for _ in range(mixing):
        if n < 2:
            break
        i, j = rng.choice(n, size=2, replace=False)
        t = rng.uniform()
        # Move mass between columns i and j while keeping d fixed and
        # column sums one: a two-column analogue of a T-transform.
        M = np.eye(n)
        M[i, i] = 1 - t
        M[j, i] = t
        M[i, j] = t * d[i] / d[j]
        M[j, j] = 1 - t * d[i] / d[j]
        if M[j, j] < 0:
            continue
        members.append(M)
    w = rng.dirichlet(np.ones(len(members)))
    return sum(wi * Mi for wi, Mi in zip(w, members))
