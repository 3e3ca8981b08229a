"""Acceptance suite: one pass/fail line per criterion.

Each test records a ``[criterion N] PASS/FAIL`` line (echoed in the pytest
terminal summary by conftest.py) and asserts the same condition.
"""

import time

import numpy as np

from gibbsmaj import channels as ch
from gibbsmaj import linalg
from gibbsmaj import polytope as pt
from gibbsmaj import reachability as rb
from gibbsmaj import thermo as th
from gibbsmaj import vectors as vec
from gibbsmaj import io

import pathlib

FIXTURES = pathlib.Path(__file__).resolve().parents[1] / "fixtures"


RESULT_LINES = []


def report(num, ok, desc):
    line = f"[criterion {num:2d}] {'PASS' if ok else 'FAIL'} - {desc}"
    RESULT_LINES.append(line)
    print(line)
    assert ok, line


def load_fixtures():
    A = io.load_hermitian(str(FIXTURES / "eq1_A.json"))
    B = io.load_hermitian(str(FIXTURES / "eq1_B.json"))
    D = io.load_hermitian(str(FIXTURES / "eq1_D.json"))
    return A, B, D


def random_qubit_triple(rng):
    """(A, B, ref) with tr A = tr B; roughly half sampled feasible."""
    G = linalg.random_hermitian(2, rng)
    ref = ch.GibbsReference(G @ G.conj().T + 0.2 * np.eye(2))
    B = linalg.random_hermitian(2, rng)
    if rng.uniform() < 0.5:
        w = rng.dirichlet(np.ones(2))
        A = w[0] * B + w[1] * np.trace(B).real * ref.gibbs
    else:
        A = linalg.random_hermitian(2, rng)
        A += (np.trace(B) - np.trace(A)).real / 2 * np.eye(2)
    return A, B, ref


def qubit_margin(A, B, ref):
    """(verdict, margin): margin is the distance of the decisive qubit-check
    slack from zero, used to discard knife-edge instances."""
    slacks = []
    slacks.append(-abs(np.trace(A).real - np.trace(B).real))
    S = ref.inv_sqrt
    b1, b2 = np.linalg.eigvalsh(S @ B @ S)
    for b in (b1, b2):
        slacks.append(linalg.trace_norm(B - b * ref.D) - linalg.trace_norm(A - b * ref.D))
    lo = np.linalg.eigvalsh(A - b1 * ref.D).min()
    hi = np.linalg.eigvalsh(b2 * ref.D - A).min()
    if min(lo, hi) < 0:
        # A leaves the [b1, b2] pencil band: failing, margin = band violation.
        slacks.append(min(lo, hi))
        return False, abs(min(lo, hi))
    fA = ch._generalized_fidelity(A, b1, b2, ref.D)
    fB = ch._generalized_fidelity(B, b1, b2, ref.D)
    slacks.append(fA - fB)
    slacks = np.array(slacks)
    verdict = bool(np.all(slacks >= -1e-12))
    return verdict, float(np.abs(slacks).min())


def test_criterion_1_separating_example():
    started = time.perf_counter()
    A, B, D = load_fixtures()
    ref = ch.GibbsReference(D)
    curve_ok = ch.trace_norm_curve_check(A, B, ref)
    verdict = ch.cptp_feasibility(A, B, ref)
    elapsed = time.perf_counter() - started
    ok = (curve_ok and verdict.status == ch.INFEASIBLE
          and verdict.residual > 1e-6 and elapsed < 5.0)
    report(1, ok,
           f"fixture triple: curve holds ({curve_ok}) but CPTP search is "
           f"{verdict.status.lower()} (residual {verdict.residual:.3e}, {elapsed:.2f}s)")


def test_criterion_2_reference_spectrum():
    _, _, D = load_fixtures()
    w = np.linalg.eigvalsh(D)
    expected = np.array([2 - np.sqrt(2), 2.0, 2 + np.sqrt(2)])
    err = np.abs(np.sort(w) - expected).max()
    report(2, err <= 1e-10,
           f"fixture D spectrum matches (2-sqrt2, 2, 2+sqrt2) within {err:.2e}")


def test_criterion_3_qubit_three_way_equivalence():
    started = time.perf_counter()
    rng = np.random.default_rng(2024)
    checked = disagreements = 0
    while checked < 500:
        A, B, ref = random_qubit_triple(rng)
        verdict_q, margin = qubit_margin(A, B, ref)
        if margin < 1e-6:
            continue
        verdict_c = ch.trace_norm_curve_check(A, B, ref)
        verdict_f = ch.cptp_feasibility(A, B, ref)
        checked += 1
        if verdict_f.status == ch.UNDECIDED or not (
                verdict_q == verdict_c == verdict_f.feasible):
            disagreements += 1
    elapsed = time.perf_counter() - started
    ok = disagreements == 0 and elapsed < 120.0
    report(3, ok,
           f"closed-form / curve / feasibility verdicts agree on {checked} "
           f"margin-filtered qubit triples ({disagreements} disagreements, {elapsed:.1f}s)")


def test_criterion_4_diagonal_reduction():
    rng = np.random.default_rng(4)
    disagreements = 0
    for _ in range(200):
        n = int(rng.integers(2, 4))
        d = rng.uniform(0.3, 2.0, size=n)
        y = rng.normal(size=n)
        if rng.uniform() < 0.5:
            x = vec.random_d_stochastic(d, rng) @ y
        else:
            x = rng.normal(size=n)
            x += (y.sum() - x.sum()) / n
        try:
            ch.diagonal_reduction_check(x, y, d)
        except ch.DisagreementError:
            disagreements += 1
    report(4, disagreements == 0,
           f"matrix and vector verdicts agree on 200 diagonal triples "
           f"({disagreements} disagreements)")


def test_criterion_5_classical_limit():
    rng = np.random.default_rng(5)
    disagreements = 0
    for _ in range(1000):
        n = int(rng.integers(2, 7))
        y = rng.normal(size=n)
        if rng.uniform() < 0.5:
            x = sum(w * y[rng.permutation(n)] for w in rng.dirichlet(np.ones(3)))
        else:
            x = rng.normal(size=n)
            x += (y.sum() - x.sum()) / n
        if vec.d_majorizes(x, y, np.ones(n)) != vec.classical_majorizes(x, y):
            disagreements += 1
    report(5, disagreements == 0,
           f"uniform-weight verdict matches the partial-sum test on 1000 pairs "
           f"({disagreements} disagreements)")


def test_criterion_6_polytope_equivalence():
    rng = np.random.default_rng(6)
    mismatches = maximizer_failures = 0
    for _ in range(20):
        n = int(rng.integers(2, 5))
        # Maximal-vertex existence is a state-space property: sample y >= 0.
        y = rng.dirichlet(np.ones(n)) * rng.uniform(0.5, 3.0)
        d = rng.uniform(0.2, 3.0, size=n)
        P = pt.polytope_inequalities(y, d)
        for _ in range(1000):
            if rng.uniform() < 0.5:
                x = vec.random_d_stochastic(d, rng) @ y
            else:
                x = rng.normal(size=n)
                x += (y.sum() - x.sum()) / n
            if P.contains(x) != vec.d_majorizes(x, y, d):
                mismatches += 1
        try:
            z = pt.classical_maximizer(y, d)
        except pt.NoMaximizerFoundError:
            maximizer_failures += 1
            continue
        for v in pt.polytope_vertices(P):
            if not vec.classical_majorizes(v, z):
                maximizer_failures += 1
        for _ in range(1000):
            if not vec.classical_majorizes(vec.random_d_stochastic(d, rng) @ y, z):
                maximizer_failures += 1
    ok = mismatches == 0 and maximizer_failures == 0
    report(6, ok,
           f"inequality membership matches the norm verdict on 20x1000 samples "
           f"({mismatches} mismatches); maximizing vertex tops all vertices and "
           f"members ({maximizer_failures} failures)")


def test_criterion_7_extreme_elements():
    rng = np.random.default_rng(7)
    minimal_failures = 0
    for _ in range(100):
        n = int(rng.integers(2, 4))
        G = linalg.random_hermitian(n, rng)
        ref = ch.GibbsReference(G @ G.conj().T + 0.2 * np.eye(n))
        B = linalg.random_hermitian(n, rng)
        B += (np.trace(ref.D) - np.trace(B)).real / n * np.eye(n)
        cert = ch.minimal_element_witness(B, ref)
        if (cert.cp_residual() > 1e-7 or cert.tp_residual() > 1e-7
                or np.abs(cert.apply(B) - ref.D).max() > 1e-7
                or np.abs(cert.apply(ref.D) - ref.D).max() > 1e-7):
            minimal_failures += 1
    maximal_failures = 0
    for _ in range(100):
        # D with a unique smallest eigenvalue at n = 3.
        w = np.sort(rng.uniform(0.2, 3.0, size=3))
        while w[1] - w[0] < 0.1:
            w = np.sort(rng.uniform(0.2, 3.0, size=3))
        U = linalg.random_unitary(3, rng)
        ref = ch.GibbsReference((U * w) @ U.conj().T)
        G = linalg.random_hermitian(3, rng)
        B = G @ G.conj().T
        B *= w.sum() / np.trace(B).real
        if not ch.maximal_element_check(B, ref):
            maximal_failures += 1
    # Degenerate minimum d = (1, 1, 2): both candidates act as maximal elements.
    ref_deg = ch.GibbsReference(np.diag([1.0, 1.0, 2.0]).astype(complex))
    nonunique_failures = 0
    E0 = ch.maximal_element(ref_deg, k=0)
    E1 = ch.maximal_element(ref_deg, k=1)
    if np.abs(E0 - E1).max() <= 1e-9:
        nonunique_failures += 1
    for k in (0, 1):
        for _ in range(5):
            G = linalg.random_hermitian(3, rng)
            B = G @ G.conj().T
            B *= 4.0 / np.trace(B).real
            if not ch.maximal_element_check(B, ref_deg, k=k):
                nonunique_failures += 1
    ok = minimal_failures == 0 and maximal_failures == 0 and nonunique_failures == 0
    report(7, ok,
           f"minimal-element certificates validate on 100 draws "
           f"({minimal_failures} failures); maximal element tops 100 random states "
           f"({maximal_failures} failures); both degenerate candidates are maximal "
           f"({nonunique_failures} failures)")


def test_criterion_8_thermal_gksl():
    # The propagator commutes with the drift only for equally spaced spectra,
    # so H_S is drawn as a random gap times (0..n-1) in a random eigenbasis.
    rng = np.random.default_rng(8)
    stationarity = trace_drift = covariance = 0.0
    monotone_failures = 0
    for _ in range(10):
        n = int(rng.integers(2, 4))
        U = linalg.random_unitary(n, rng)
        H = (U * (rng.uniform(0.5, 2.0) * np.arange(n))) @ U.conj().T
        ctx = th.GibbsContext(H, float(rng.uniform(0.5, 3.0)))
        sys_ = th.thermal_gksl(ctx, gamma=float(rng.uniform(0.3, 1.5)))
        stationarity = max(stationarity,
                           linalg.frobenius(th.gksl_rhs(sys_, ctx.gibbs)))
        G = linalg.random_hermitian(n, rng)
        rho0 = G @ G.conj().T
        rho0 /= np.trace(rho0).real
        traj = th.integrate_gksl(sys_, rho0, horizon=2.0, step=0.01)
        trace_drift = max(trace_drift,
                          max(abs(np.trace(r).real - 1.0) for _, r in traj))
        ref = ch.GibbsReference(ctx.gibbs)
        for _ in range(10):
            i, j = sorted(rng.choice(len(traj), size=2, replace=False))
            if i == j:
                continue
            if not rb.md_membership(traj[j][1], traj[i][1], ref).feasible:
                monotone_failures += 1
        for t in np.linspace(0.4, 2.0, 5):
            covariance = max(covariance,
                             th.covariance_residual(th.propagator(sys_, float(t)), H))
    ok = (stationarity <= 1e-8 and trace_drift <= 1e-8
          and monotone_failures == 0 and covariance <= 1e-8)
    report(8, ok,
           f"10 thermal systems: stationarity {stationarity:.2e}, trace drift "
           f"{trace_drift:.2e}, {monotone_failures} monotonicity failures, "
           f"propagator covariance {covariance:.2e}")


def test_criterion_9_thermal_operations():
    rng = np.random.default_rng(9)
    H_S = np.diag([0.0, 1.0])
    g = th.gibbs_state(H_S, 1.0)
    failures = 0
    # Identity fixture.
    op_id = th.ThermalOperation(H_S, H_S, np.eye(4), 1.0)
    J = th.build_thermal_operation(op_id)
    if (th.energy_conservation_check(op_id) > 1e-10
            or np.abs(J.apply(g) - g).max() > 1e-10):
        failures += 1
    # Swap fixture: the constant-to-Gibbs channel.
    swap = np.eye(4)[[0, 2, 1, 3]]
    op_swap = th.ThermalOperation(H_S, H_S, swap, 1.0)
    J = th.build_thermal_operation(op_swap)
    if (th.energy_conservation_check(op_swap) > 1e-10
            or np.abs(J.apply(g) - g).max() > 1e-10):
        failures += 1
    # 20 random commutant unitaries: CPTP, Gibbs-fixing, covariant.
    H_R = np.diag([0.0, 1.0, 2.0])
    inclusion = 0.0
    for _ in range(20):
        Uc = th.random_commutant_unitary(H_S, H_R, rng)
        op = th.ThermalOperation(H_S, H_R, Uc, 1.0)
        if th.energy_conservation_check(op) > 1e-8:
            failures += 1
            continue
        J = th.build_thermal_operation(op, comm_tol=1e-7)
        if not J.is_cptp(1e-9):
            failures += 1
        inclusion = max(inclusion,
                        float(np.abs(J.apply(g) - g).max()),
                        th.covariance_residual(J, H_S))
    if inclusion > 1e-8:
        failures += 1
    # CNOT fixture: not energy conserving.
    cnot = np.eye(4)[[0, 1, 3, 2]]
    op_cnot = th.ThermalOperation(H_S, H_S, cnot, 1.0)
    comm = th.energy_conservation_check(op_cnot)
    cnot_refused = False
    try:
        th.build_thermal_operation(op_cnot)
    except th.EnergyConservationViolatedError:
        cnot_refused = True
    if not (comm > 0.1 and cnot_refused):
        failures += 1
    report(9, failures == 0,
           f"identity/swap fixtures and 20 commutant unitaries pass "
           f"(worst inclusion residual {inclusion:.2e}); CNOT refused with "
           f"commutator norm {comm:.2f} ({failures} failures)")


def batch_weighted_images(y, d, count, rng):
    """Vectorized sampler: each image is a convex mixture of the input, the
    scaled weight vector, and three composed two-level weighted transfers."""
    n = y.size
    X = np.tile(y, (count, 1))
    rows = np.arange(count)
    for _ in range(3):
        i = rng.integers(0, n, size=count)
        j = rng.integers(0, n, size=count)
        live = i != j
        tmax = np.minimum(1.0, d[j] / d[i])
        t = rng.uniform(size=count) * tmax
        xi = X[rows, i].copy()
        xj = X[rows, j].copy()
        new_i = (1.0 - t) * xi + t * (d[i] / d[j]) * xj
        new_j = t * xi + (1.0 - t * d[i] / d[j]) * xj
        X[rows[live], i[live]] = new_i[live]
        X[rows[live], j[live]] = new_j[live]
    w = rng.dirichlet(np.ones(3), size=count)
    base = np.tile(y, (count, 1))
    gibbs = np.tile(d * (y.sum() / d.sum()), (count, 1))
    return w[:, :1] * X + w[:, 1:2] * base + w[:, 2:3] * gibbs


def test_criterion_10_two_stage_bound():
    rng = np.random.default_rng(10)
    d = 0.5 ** np.arange(3)
    failures = 0
    for _ in range(50):
        x0 = rng.dirichlet(np.ones(3))
        z = rb.compose_bound(x0, d)
        images = batch_weighted_images(x0, d, 10_000, rng)
        zs = np.cumsum(np.sort(z)[::-1])
        sums = np.cumsum(np.sort(images, axis=1)[:, ::-1], axis=1)
        tol = 1e-9 * (1.0 + np.abs(z).sum())
        bad = (np.any(sums[:, :-1] > zs[:-1] + tol, axis=1)
               | (np.abs(sums[:, -1] - zs[-1]) > tol))
        failures += int(bad.sum())
    report(10, failures == 0,
           f"50 starting points x 10000 weighted-stochastic images all stay below "
           f"the two-stage bound ({failures} escapes)")
