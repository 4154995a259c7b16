import numpy as np
import pytest

from switchsim import channels as ch
from switchsim import info
from switchsim import switch as sw
from switchsim.errors import ConventionError
from switchsim.linalg import max_entangled_ket


class TestClosedFormEntropies:
    def test_s_min_e0_values(self):
        assert info.s_min_e0_closed(2, 2) == pytest.approx(0.9709505944546686, abs=1e-12)
        assert info.s_min_e0_closed(10**9, 2) < 1e-6

    def test_depolarizing_min_entropy_limits(self):
        for d in (2, 3, 5):
            assert info.depolarizing_min_entropy(0.0, d) == pytest.approx(
                np.log2(d), abs=1e-12
            )
            assert info.depolarizing_min_entropy(1.0, d) == pytest.approx(0.0, abs=1e-12)

    def test_s_min_e1_values(self):
        assert info.s_min_e1_closed(2) == pytest.approx(0.9182958340544896, abs=1e-12)
        assert info.s_min_e1_closed(3) == pytest.approx(1.5612781244591330, abs=1e-12)

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_numeric_matches_e1_closed_form(self, d):
        got = info.min_output_entropy_numeric(ch.e1_channel(d), restarts=8, seed=d)
        assert abs(got - info.s_min_e1_closed(d)) <= 1e-6

    def test_numeric_matches_e0_closed_form(self):
        got = info.min_output_entropy_numeric(ch.e0_channel(5, 2), restarts=8, seed=0)
        assert abs(got - info.s_min_e0_closed(5, 2)) <= 1e-6

    def test_numeric_identity_channel(self):
        got = info.min_output_entropy_numeric(ch.identity_channel(3), restarts=4, seed=1)
        assert abs(got) <= 1e-9

    def test_numeric_never_below_closed_form(self):
        for n, d in ((2, 2), (4, 3)):
            got = info.min_output_entropy_numeric(ch.e0_channel(n, d), restarts=4, seed=n + d)
            assert got >= info.s_min_e0_closed(n, d) - 1e-9


class TestCapacity:
    def test_reference_value(self):
        rep = info.classical_capacity(2, 2)
        assert rep.capacity == pytest.approx(0.0487949406953985, abs=1e-12)
        assert rep.p == pytest.approx(3 / 8, abs=1e-15)

    def test_internal_identity(self):
        for n, d in ((2, 2), (7, 3), (20, 5)):
            rep = info.classical_capacity(n, d)
            recomputed = np.log2(d) - (1 - rep.p) * rep.s_min_e0 - rep.p * rep.s_min_e1
            assert abs(rep.capacity - recomputed) <= 1e-12

    def test_monotone_in_n(self):
        for d in (2, 3):
            caps = [info.classical_capacity(n, d).capacity for n in range(2, 20)]
            assert all(b > a for a, b in zip(caps, caps[1:]))

    def test_decreasing_in_d(self):
        for n in (2, 10):
            caps = [info.classical_capacity(n, d).capacity for d in (2, 3, 4, 5)]
            assert all(b < a for a, b in zip(caps, caps[1:]))

    def test_bounded(self):
        for n, d in ((2, 2), (50, 4)):
            rep = info.classical_capacity(n, d)
            assert 0.0 <= rep.capacity <= np.log2(d)

    def test_ensemble_holevo_matches_capacity(self):
        for n, d in ((2, 2), (3, 2), (2, 3)):
            rep = info.classical_capacity(n, d)
            holevo = info.uniform_basis_holevo(sw.effective_channel_closed_form(n, d))
            assert abs(holevo - rep.capacity) <= 1e-9


class TestAsymptote:
    def test_reference_value(self):
        assert info.capacity_asymptotic(2) == pytest.approx(0.3112781244591328, abs=1e-12)

    def test_matches_large_n_limit(self):
        # the N-independent part equals log d minus the universal-NOT entropy
        # weighted by its limiting probability
        for d in (2, 3, 4):
            direct = np.log2(d) - (d * d - 1) / (d * d) * info.s_min_e1_closed(d)
            assert abs(info.capacity_asymptotic(d) - direct) <= 1e-12

    def test_decreasing_in_d(self):
        vals = [info.capacity_asymptotic(d) for d in range(2, 8)]
        assert all(b < a for a, b in zip(vals, vals[1:]))

    def test_vanishes_for_large_d(self):
        assert info.capacity_asymptotic(64) < 0.002


class TestPPT:
    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_boundary_order_count_is_ppt(self, d):
        verdict = info.ppt_check(ch.kraus_to_choi(ch.e0_channel(d + 1, d), "state"))
        assert verdict.is_ppt
        assert abs(verdict.min_pt_eigenvalue) <= 1e-9

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_above_boundary_is_entangled(self, d):
        verdict = info.ppt_check(ch.kraus_to_choi(ch.e0_channel(d + 2, d), "state"))
        assert not verdict.is_ppt

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_universal_not_is_ppt(self, d):
        assert info.ppt_check(ch.e1_choi(d, "state")).is_ppt

    def test_rejects_operator_convention(self):
        with pytest.raises(ConventionError):
            info.ppt_check(ch.kraus_to_choi(ch.e0_channel(2, 2), "operator"))

    def test_isotropic_crossing(self):
        # min PT eigenvalue crosses zero exactly at identity weight 1/(d+1)
        for d in (2, 3):
            phi = max_entangled_ket(d)
            proj = np.outer(phi, phi.conj())

            def min_pt(lam):
                m = lam * proj + (1 - lam) * np.eye(d * d) / d**2
                c = ch.ChoiOperator(m, d, d, "state")
                return info.ppt_check(c).min_pt_eigenvalue

            lam_star = 1 / (d + 1)
            assert abs(min_pt(lam_star)) <= 1e-9
            assert min_pt(lam_star - 1e-6) > 0
            assert min_pt(lam_star + 1e-6) < 0


class TestTwoWayThreshold:
    def test_qubit_thresholds(self):
        assert not info.two_way_capacity_positive(2, 2)
        assert not info.two_way_capacity_positive(3, 2)
        assert info.two_way_capacity_positive(4, 2)

    def test_qutrit_threshold(self):
        assert not info.two_way_capacity_positive(4, 3)
        assert info.two_way_capacity_positive(5, 3)

    def test_agreement_with_ppt(self):
        for d in range(2, 6):
            for n in range(2, 11):
                verdict = info.ppt_check(ch.kraus_to_choi(ch.e0_channel(n, d), "state"))
                assert info.two_way_capacity_positive(n, d) == (not verdict.is_ppt)


class TestFidelityFunctional:
    def test_unot_exact(self):
        out = info.unot_fidelity(2, mc_samples=500, seed=0)
        assert out.exact == pytest.approx(1 / 3, abs=1e-15)
        assert abs(out.mc_estimate - out.exact) <= max(4 * out.mc_stderr, 1e-9)

    def test_identity_channel(self):
        assert info.fidelity_functional_exact(ch.identity_channel(3)) == pytest.approx(
            1.0, abs=1e-12
        )

    def test_white_noise(self):
        for d in (2, 4):
            got = info.fidelity_functional_exact(ch.completely_depolarizing(d))
            assert got == pytest.approx(1 / d, abs=1e-12)

    def test_universal_not_is_the_minimiser(self):
        for d in (2, 3):
            f_id = info.fidelity_functional_exact(ch.identity_channel(d))
            f_dep = info.fidelity_functional_exact(ch.completely_depolarizing(d))
            f_not = info.fidelity_functional_exact(ch.e1_channel(d))
            assert f_not < f_dep < f_id
            mc, se = info.fidelity_functional_mc(ch.e1_channel(d), 400, seed=d)
            assert abs(mc - f_not) <= max(4 * se, 1e-9)


class TestLambdaMax:
    def test_reference_value(self):
        assert info.lambda_max(2) == pytest.approx(0.15470053837925146, abs=1e-12)

    def test_below_entanglement_threshold(self):
        for d in range(2, 11):
            assert info.lambda_max(d) < 1 / (d + 1)

    def test_noise_gain_changes_sign_at_lambda_max(self):
        lm = info.lambda_max(2)
        assert sw.lambda_prime(lm - 1e-6, 2) - (lm - 1e-6) > 0
        assert sw.lambda_prime(lm + 1e-6, 2) - (lm + 1e-6) < 0

    def test_prime_dominates_square(self):
        for d in (2, 3, 4, 5):
            for lam in np.arange(0.0, 1.0001, 0.05):
                assert sw.lambda_prime(float(lam), d) >= lam * lam - 1e-12

    def test_noise_improvement_region(self):
        # switching beats a single channel exactly on {lam <= lambda_max} and
        # at the noiseless point lam = 1
        for d in (2, 3):
            lm = info.lambda_max(d)
            for i in range(1001):
                lam = i / 1000
                improves = sw.lambda_prime(lam, d) >= lam - 1e-12
                in_region = lam <= lm + 1e-12 or abs(lam - 1.0) <= 1e-12
                assert improves == in_region, (d, lam)


class TestNogo:
    def test_small_run_passes(self):
        report = info.n2_nogo_check(trials=3, seed=5)
        assert report.ok
        assert report.max_identity_deviation <= 1e-9
        assert report.min_pt_eigenvalue >= -1e-10

    def test_base_case_identity_uniform_control(self):
        d = 2
        direct = sw.n2_with_intermediate(ch.identity_channel(d), sw.uniform_control(2))
        assert info.ppt_check(direct.as_state()).is_ppt
        via = sw.n2_intermediate_via_adjoint(ch.identity_channel(d), sw.uniform_control(2))
        assert ch.choi_distance(direct, via) <= 1e-9

    def test_rejects_zero_trials(self):
        with pytest.raises(ValueError):
            info.n2_nogo_check(trials=0)
