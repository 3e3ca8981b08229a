"""The d-majorization polytope {x : x is d-majorized by y}.

The polytope is described by 2^n sign-vector inequalities: for every
epsilon in {-1, +1}^n,

    epsilon . x  <=  b_eps := min_i [ ||y - (y_i/d_i) d||_1 + (y_i/d_i) epsilon . d ].

The two rows epsilon = +-(1, ..., 1) pin the total sum, so the polytope
lives in the hyperplane sum(x) = sum(y).  Vertices are enumerated by
active-set combinatorics in the (n-1)-dimensional reduced coordinates.
"""

import itertools
from dataclasses import dataclass, field

import numpy as np

from .vectors import check_weights, classical_majorizes, d_majorizes

MAX_INEQ_DIM = 12
MAX_VERTEX_DIM = 5


class NoMaximizerFoundError(RuntimeError):
    """No vertex classically majorizes all other vertices (tolerance failure)."""


@dataclass(frozen=True)
class MajorizationPolytope:
    y: np.ndarray
    d: np.ndarray
    sign_rows: np.ndarray  # (2^n, n), entries +-1
    bounds: np.ndarray     # (2^n,)
    _vertices: list = field(default_factory=list, repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.y.size

    def contains(self, x, tol: float | None = None) -> bool:
        x = np.asarray(x, dtype=float)
        if tol is None:
            tol = 1e-9 * (1.0 + np.abs(self.bounds).max(initial=0.0))
        return bool(np.all(self.sign_rows @ x <= self.bounds + tol))


def polytope_inequalities(y, d) -> MajorizationPolytope:
    y = np.asarray(y, dtype=float)
    d = check_weights(d)
    n = y.size
    if n != d.size:
        raise ValueError("y and d must have equal length")
    if n > MAX_INEQ_DIM:
        raise ValueError(f"n = {n} too large: the row count 2^n is capped at n = {MAX_INEQ_DIM}")
    t = y / d                       # kink locations of ||y - t d||_1
    c = np.abs(y[None, :] - np.outer(t, d)).sum(axis=1)   # c_i = ||y - t_i d||_1
    rows = np.array(list(itertools.product((-1.0, 1.0), repeat=n)))
    # b_eps = min_i [c_i + t_i * (eps . d)]
    b = (c[None, :] + np.outer(rows @ d, t)).min(axis=1)
    return MajorizationPolytope(y=y, d=d, sign_rows=rows, bounds=b)


def polytope_vertices(P: MajorizationPolytope) -> list[np.ndarray]:
    """All vertices of the polytope, deduplicated at resolution 1e-8.

    Works in the reduced coordinates u = x[:-1] with x[-1] eliminated via
    the fixed total, then enumerates bases among the reduced rows.
    """
    n = P.n
    if n > MAX_VERTEX_DIM:
        raise ValueError(f"vertex enumeration capped at n = {MAX_VERTEX_DIM}")
    if n == 1:
        return [P.y.copy()]
    S = float(P.y.sum())
    M, b = P.sign_rows, P.bounds
    # Row m.x <= b with x_n eliminated: (m[:-1] - m[-1] e) . u <= b - m[-1] S.
    Mr = M[:, :-1] - M[:, -1:]
    br = b - M[:, -1] * S
    scale = 1.0 + np.abs(b).max(initial=0.0)
    keep = np.abs(Mr).max(axis=1) > 0
    Mr, br = Mr[keep], br[keep]
    verts: list[np.ndarray] = []
    for idx in itertools.combinations(range(Mr.shape[0]), n - 1):
        A = Mr[list(idx)]
        if abs(np.linalg.det(A)) < 1e-10:
            continue
        u = np.linalg.solve(A, br[list(idx)])
        if np.any(Mr @ u > br + 1e-9 * scale):
            continue
        x = np.append(u, S - u.sum())
        if not any(np.abs(x - v).max() <= 1e-8 * scale for v in verts):
            verts.append(x)
    # Degenerate case (e.g. y proportional to d): the polytope is a single
    # point and no (n-1)-row basis may be strictly active; fall back to y.
    if not verts:
        verts = [P.y.copy()]
    return verts


def classical_maximizer(y, d) -> np.ndarray:
    """A vertex z of the polytope that classically majorizes every vertex.

    Existence is a structural property of d-majorization polytopes of
    states (entrywise nonnegative y); for vectors with negative entries no
    such vertex need exist and NoMaximizerFoundError is raised.  By
    convexity z classically majorizes every member.  Ties are broken by
    the lexicographically largest decreasing rearrangement.
    """
    P = polytope_inequalities(y, d)
    verts = polytope_vertices(P)
    candidates = []
    for z in verts:
        if all(classical_majorizes(v, z) for v in verts):
            candidates.append(z)
    if not candidates:
        # Report the "most majorizing" vertex and one it fails against.
        for z in verts:
            bad = [v for v in verts if not classical_majorizes(v, z)]
            if bad:
                raise NoMaximizerFoundError(
                    f"no classical maximizer found; vertex {z} fails against {bad[0]}")
        raise NoMaximizerFoundError("no classical maximizer found")
    keys = [tuple(np.sort(z)[::-1]) for z in candidates]
    return candidates[max(range(len(candidates)), key=lambda i: keys[i])]
