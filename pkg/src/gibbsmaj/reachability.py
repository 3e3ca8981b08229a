"""The down-set operator of D-majorization and its reachability bounds.

M_D(rho) is the set of all states D-majorized by rho.  Membership is the
CPTP fixed-point feasibility question; structural properties (convexity,
star-shapedness around the Gibbs state, non-expansiveness in Hausdorff
distance at the vector level) are probed by sampling.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from . import linalg
from .channels import (ChoiMatrix, FeasibilityVerdict, GibbsReference,
                       choi_constant, choi_identity, cptp_feasibility, mix_choi)
from .polytope import MajorizationPolytope, classical_maximizer, polytope_inequalities, polytope_vertices
from .vectors import check_weights, classical_majorizes
from .thermo import GibbsContext, propagator, thermal_gksl


def md_membership(X, rho, ref: GibbsReference, **solver_kwargs) -> FeasibilityVerdict:
    """Is X a member of M_D(rho)?  Delegates to the CPTP feasibility search."""
    return cptp_feasibility(X, rho, ref, **solver_kwargs)


def random_gibbs_fixing_channel(ref: GibbsReference, rng: np.random.Generator,
                                n_propagators: int = 2) -> ChoiMatrix:
    """Random channel fixing D/tr(D): a mixture of the identity, the constant
    map onto the Gibbs state, and thermal propagators at random times.

    The reference is read as the Gibbs state of H = -log(D / tr D) at T = 1,
    so every mixture component fixes it exactly.
    """
    n = ref.n
    w, U = ref.eig
    gibbs = ref.gibbs
    H = -(U * np.log(w / w.sum())) @ U.conj().T
    ctx = GibbsContext(H_S=H, T=1.0)
    sys = thermal_gksl(ctx)
    chois = [choi_identity(n), choi_constant(gibbs)]
    for _ in range(n_propagators):
        chois.append(propagator(sys, float(rng.uniform(0.05, 2.0))))
    weights = rng.dirichlet(np.ones(len(chois)))
    return mix_choi(weights, chois)


@dataclass
class StarShapeReport:
    samples: int
    checks: int
    violations: int
    undecided: int


def star_shape_probe(rho, ref: GibbsReference, samples: int,
                     rng: np.random.Generator,
                     lambdas=(0.25, 0.5, 0.75)) -> StarShapeReport:
    """Probe star-shapedness of M_D(rho) around the Gibbs state.

    For random members X of M_D(rho) (images of rho under random D-fixing
    channels) every point lam*X + (1-lam)*Gibbs must again be a member.
    """
    rho = linalg.as_hermitian(rho)
    gibbs = ref.gibbs
    checks = violations = undecided = 0
    for _ in range(samples):
        channel = random_gibbs_fixing_channel(ref, rng)
        X = channel.apply(rho)
        for lam in lambdas:
            point = lam * X + (1.0 - lam) * np.trace(rho).real * gibbs
            verdict = md_membership(point, rho, ref)
            checks += 1
            if verdict.status == "undecided":
                undecided += 1
            elif not verdict.feasible:
                violations += 1
    return StarShapeReport(samples, checks, violations, undecided)


def compose_bound(x0, d) -> np.ndarray:
    """Finite description of the two-stage majorization bound on reachability.

    The set of points classically majorized by some d-majorized image of x0
    equals the classical down-set of the maximizing vertex z of the
    d-majorization polytope of x0; membership of any candidate x is then
    just classical_majorizes(x, z).
    """
    x0 = np.asarray(x0, dtype=float)
    d = check_weights(d)
    return classical_maximizer(x0, d)


def distance_to_polytope_1norm(point, P: MajorizationPolytope) -> float:
    """min ||v - x||_1 over x in the polytope, via an LP with slack variables."""
    v = np.asarray(point, dtype=float)
    n = v.size
    M, b = P.sign_rows, P.bounds
    # Variables (x, s); minimize sum(s) s.t. Mx <= b, |x - v| <= s.
    c = np.concatenate([np.zeros(n), np.ones(n)])
    A_ub = np.block([
        [M, np.zeros((M.shape[0], n))],
        [np.eye(n), -np.eye(n)],
        [-np.eye(n), -np.eye(n)],
    ])
    b_ub = np.concatenate([b, v, -v])
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, bounds=(None, None), method="highs")
    if not res.success:
        raise RuntimeError(f"distance LP failed: {res.message}")
    return float(res.fun)


def hausdorff_distance_1norm(P: MajorizationPolytope, Q: MajorizationPolytope) -> float:
    dPQ = max(distance_to_polytope_1norm(v, Q) for v in polytope_vertices(P))
    dQP = max(distance_to_polytope_1norm(w, P) for w in polytope_vertices(Q))
    return max(dPQ, dQP)


def hausdorff_nonexpansive_probe(x, y, d) -> tuple[float, float]:
    """(Hausdorff distance between the two polytopes, ||x - y||_1).

    Non-expansiveness of the down-set operator asserts lhs <= rhs.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    d = check_weights(d)
    Px = polytope_inequalities(x, d)
    Py = polytope_inequalities(y, d)
    return hausdorff_distance_1norm(Px, Py), float(np.abs(x - y).sum())
