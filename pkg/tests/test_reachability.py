import numpy as np
import pytest

from gibbsmaj import channels as ch
from gibbsmaj import linalg
from gibbsmaj import polytope as pt
from gibbsmaj import reachability as rb
from gibbsmaj import vectors as vec

EQ1_A = np.array([[2, 1, 0], [1, 2, -1j], [0, 1j, 2]], dtype=complex)
EQ1_B = np.array([[2, 1, 0], [1, 2, 1j], [0, -1j, 2]], dtype=complex)
EQ1_D = np.array([[2, 1, 0], [1, 2, 1], [0, 1, 2]], dtype=complex)


class TestMembership:
    def test_rho_and_gibbs_are_members(self):
        ref = ch.GibbsReference(EQ1_D)
        assert rb.md_membership(EQ1_B, EQ1_B, ref).status == ch.FEASIBLE
        g = np.trace(EQ1_B).real * ref.gibbs
        assert rb.md_membership(g, EQ1_B, ref).status == ch.FEASIBLE

    def test_eq1_counterexample_excluded(self):
        ref = ch.GibbsReference(EQ1_D)
        assert rb.md_membership(EQ1_A, EQ1_B, ref).status == ch.INFEASIBLE


class TestRandomGibbsFixingChannel:
    def test_is_cptp_and_fixes_gibbs(self):
        rng = np.random.default_rng(0)
        for _ in range(5):
            D = linalg.random_hermitian(2, rng)
            D = D @ D.conj().T + 0.3 * np.eye(2)
            ref = ch.GibbsReference(D)
            J = rb.random_gibbs_fixing_channel(ref, rng)
            assert J.is_cptp(1e-8)
            assert np.abs(J.apply(ref.gibbs) - ref.gibbs).max() <= 1e-9

    def test_images_are_members(self):
        rng = np.random.default_rng(1)
        D = np.diag([0.5, 1.5]).astype(complex)
        ref = ch.GibbsReference(D)
        rho = np.array([[0.7, 0.2], [0.2, 0.3]], dtype=complex)
        for _ in range(5):
            J = rb.random_gibbs_fixing_channel(ref, rng)
            X = J.apply(rho)
            assert rb.md_membership(X, rho, ref).status == ch.FEASIBLE


class TestStarShape:
    def test_no_violations_small(self):
        rng = np.random.default_rng(2)
        D = np.diag([1.0, 2.0]).astype(complex)
        ref = ch.GibbsReference(D)
        rho = np.array([[0.8, 0.1j], [-0.1j, 0.2]], dtype=complex)
        report = rb.star_shape_probe(rho, ref, samples=4, rng=rng)
        assert report.checks == 12
        assert report.violations == 0


class TestComposeBound:
    def test_uniform_weights_reduce_to_rearrangement(self):
        rng = np.random.default_rng(3)
        x0 = rng.dirichlet(np.ones(3))
        z = rb.compose_bound(x0, np.ones(3))
        assert np.allclose(np.sort(z)[::-1], np.sort(x0)[::-1], atol=1e-8)

    def test_bounds_two_stage_images(self):
        # Every classical down-move of every d-stochastic image of x0 is
        # classically majorized by the bound vector.
        rng = np.random.default_rng(4)
        d = 0.5 ** np.arange(3)
        x0 = rng.dirichlet(np.ones(3))
        z = rb.compose_bound(x0, d)
        for _ in range(500):
            y = vec.random_d_stochastic(d, rng) @ x0
            assert vec.classical_majorizes(y, z)
            # A further classical down-move stays below the bound as well.
            lam = rng.uniform()
            y2 = lam * y + (1 - lam) * np.full(3, y.sum() / 3)
            assert vec.classical_majorizes(y2, z)

    def test_bound_is_reachable(self):
        d = np.array([1.0, 0.5, 0.25])
        x0 = np.array([0.5, 0.3, 0.2])
        z = rb.compose_bound(x0, d)
        assert vec.d_majorizes(z, x0, d)


class TestDistanceAndHausdorff:
    def test_member_has_zero_distance(self):
        rng = np.random.default_rng(5)
        y = rng.normal(size=3)
        d = rng.uniform(0.3, 2.0, size=3)
        P = pt.polytope_inequalities(y, d)
        x = vec.random_d_stochastic(d, rng) @ y
        assert rb.distance_to_polytope_1norm(x, P) <= 1e-9

    def test_distance_matches_hand_case(self):
        # Classical polytope of (1, 0) is the segment between (1,0) and (0,1);
        # the nearest point to (2, -1) is (1, 0) at 1-norm distance 2.
        P = pt.polytope_inequalities([1.0, 0.0], [1.0, 1.0])
        assert rb.distance_to_polytope_1norm([2.0, -1.0], P) == pytest.approx(2.0, abs=1e-9)

    def test_hausdorff_zero_for_equal_inputs(self):
        rng = np.random.default_rng(6)
        y = rng.normal(size=3)
        d = rng.uniform(0.3, 2.0, size=3)
        dH, gap = rb.hausdorff_nonexpansive_probe(y, y.copy(), d)
        assert gap == 0.0
        assert dH <= 1e-8

    def test_small_shift_bound(self):
        rng = np.random.default_rng(7)
        y = rng.normal(size=3)
        d = rng.uniform(0.3, 2.0, size=3)
        eps = 1e-3
        shift = rng.normal(size=3)
        shift *= eps / np.abs(shift).sum()
        dH, gap = rb.hausdorff_nonexpansive_probe(y, y + shift, d)
        assert gap == pytest.approx(eps)
        assert dH <= gap + 1e-9

    def test_nonexpansive_random_pairs(self):
        rng = np.random.default_rng(8)
        for _ in range(15):
            n = int(rng.integers(2, 4))
            d = rng.uniform(0.3, 2.0, size=n)
            x = rng.normal(size=n)
            y = rng.normal(size=n)
            dH, gap = rb.hausdorff_nonexpansive_probe(x, y, d)
            assert dH <= gap + 1e-8


class TestConvexity:
    def test_member_averages_are_members(self):
        # Average of two membership certificates witnesses membership of the
        # averaged point, so the verdict for midpoints must be feasible.
        rng = np.random.default_rng(9)
        D = np.diag([0.7, 1.3]).astype(complex)
        ref = ch.GibbsReference(D)
        rho = np.array([[0.9, 0.1], [0.1, 0.1]], dtype=complex)
        for _ in range(5):
            X1 = rb.random_gibbs_fixing_channel(ref, rng).apply(rho)
            X2 = rb.random_gibbs_fixing_channel(ref, rng).apply(rho)
            v1 = rb.md_membership(X1, rho, ref)
            v2 = rb.md_membership(X2, rho, ref)
            mixed = ch.mix_choi([0.5, 0.5], [v1.certificate, v2.certificate])
            mid = 0.5 * (X1 + X2)
            assert np.abs(mixed.apply(rho) - mid).max() <= 1e-5
            assert rb.md_membership(mid, rho, ref).status == ch.FEASIBLE

    def test_membership_stable_under_small_perturbation_toward_gibbs(self):
        rng = np.random.default_rng(10)
        D = np.diag([0.6, 1.4]).astype(complex)
        ref = ch.GibbsReference(D)
        rho = np.array([[0.85, 0.05], [0.05, 0.15]], dtype=complex)
        X = rb.random_gibbs_fixing_channel(ref, rng).apply(rho)
        for eps in (1e-3, 1e-2):
            Xp = (1 - eps) * X + eps * np.trace(rho).real * ref.gibbs
            assert rb.md_membership(Xp, rho, ref).status == ch.FEASIBLE
