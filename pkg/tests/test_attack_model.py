"""双花攻击闭式概率测试"""
import math

import pytest
from hypothesis import given, strategies as st
from scipy.stats import poisson

from chainmetrics.attack import (
    AttackScenario,
    attacker_lead_tail,
    catch_up_probability,
    confirmation_table,
    double_spend_probability,
    min_confirmations,
    risk_series,
)
from chainmetrics.errors import DomainError, NoFiniteDepthError


def series_oracle(q: float, z: int) -> float:
    """原始无穷级数：Σ_k Poisson(k; λ)·((q/p)^{z−k} 若 k ≤ z，否则 1)"""
    p = 1.0 - q
    lam = z * q / p
    head = sum(poisson.pmf(k, lam) * (q / p) ** (z - k) for k in range(z + 1))
    return float(head + poisson.sf(z, lam))


def scan_oracle(q: float, epsilon: float) -> int:
    z = 0
    while series_oracle(q, z) >= epsilon:
        z += 1
    return z


class TestAttackScenario:
    def test_p_is_derived(self):
        assert AttackScenario(q=0.3, z=2).p == pytest.approx(0.7)

    @pytest.mark.parametrize("q", [-0.1, 1.5, float("nan")])
    def test_rejects_out_of_range_q(self, q):
        with pytest.raises(DomainError):
            AttackScenario.create(q, 1)

    def test_rejects_negative_depth(self):
        with pytest.raises(DomainError):
            AttackScenario.create(0.1, -1)


class TestCatchUpProbability:
    def test_majority_attacker_always_catches_up(self):
        assert catch_up_probability(AttackScenario(q=0.6, z=10)) == 1.0

    def test_zero_deficit(self):
        assert catch_up_probability(AttackScenario(q=0.3, z=0)) == 1.0

    def test_geometric_value(self):
        assert catch_up_probability(AttackScenario(q=0.1, z=2)) == pytest.approx(1 / 81, rel=1e-12)

    @given(q=st.floats(0.01, 0.49), z=st.integers(0, 200))
    def test_successive_ratio_is_q_over_p(self, q, z):
        a = catch_up_probability(AttackScenario(q=q, z=z))
        b = catch_up_probability(AttackScenario(q=q, z=z + 1))
        if a > 1e-250:
            assert b / a == pytest.approx(q / (1 - q), rel=1e-9)


class TestDoubleSpendProbability:
    def test_zero_depth_is_certain(self):
        for q in (0.0, 0.1, 0.45):
            assert double_spend_probability(AttackScenario(q=q, z=0)).probability == 1.0

    def test_published_values(self):
        assert double_spend_probability(AttackScenario(q=0.1, z=5)).probability == pytest.approx(0.0009137, rel=1e-4)
        assert double_spend_probability(AttackScenario(q=0.3, z=5)).probability == pytest.approx(0.1773523, rel=1e-6)

    def test_lambda(self):
        assert double_spend_probability(AttackScenario(q=0.1, z=5)).lam == pytest.approx(5 / 9)

    def test_honest_only_network(self):
        assert double_spend_probability(AttackScenario(q=0.0, z=3)).probability == 0.0

    def test_majority_attacker(self):
        assert double_spend_probability(AttackScenario(q=0.6, z=3)).probability == 1.0

    def test_rejects_q_one(self):
        with pytest.raises(DomainError):
            double_spend_probability(AttackScenario(q=1.0, z=3))

    def test_agrees_with_infinite_series(self):
        for step in range(1, 10):
            q = step * 0.05
            for z in range(31):
                closed = double_spend_probability(AttackScenario(q=q, z=z)).probability
                assert abs(closed - series_oracle(q, z)) <= 1e-12, (q, z)

    def test_decreasing_in_depth(self):
        probs = [pt.double_spend for pt in risk_series(0.2, 40)]
        assert all(b <= a for a, b in zip(probs, probs[1:]))

    def test_nonincreasing_in_depth_on_grid(self):
        for step in range(1, 10):
            q = step * 0.05
            probs = [double_spend_probability(AttackScenario(q=q, z=z)).probability for z in range(31)]
            for z, (a, b) in enumerate(zip(probs, probs[1:])):
                assert b <= a, (q, z, a, b)

    def test_small_probabilities_keep_relative_accuracy(self):
        for q, z in ((0.05, 18), (0.05, 29), (0.1, 27), (0.1, 60)):
            closed = double_spend_probability(AttackScenario(q=q, z=z)).probability
            assert closed > 0.0
            assert closed == pytest.approx(series_oracle(q, z), rel=1e-9), (q, z)

    def test_bounded_below_by_attacker_lead(self):
        for step in range(1, 10):
            q = step * 0.05
            for z in range(31):
                scenario = AttackScenario(q=q, z=z)
                assert double_spend_probability(scenario).probability >= attacker_lead_tail(scenario) - 1e-15, (q, z)

    def test_near_half_is_almost_certain(self):
        for z in range(11):
            assert double_spend_probability(AttackScenario(q=0.4999, z=z)).probability > 0.99

    def test_increasing_in_q(self):
        probs = [double_spend_probability(AttackScenario(q=q / 100, z=6)).probability for q in range(1, 50)]
        assert all(b >= a for a, b in zip(probs, probs[1:]))

    def test_log_space_path_for_deep_confirmations(self):
        risk = double_spend_probability(AttackScenario(q=0.45, z=20_000))
        assert 0.0 <= risk.probability < 1e-10
        assert math.isfinite(risk.lam)

    @given(q=st.floats(0.0, 0.499), z=st.integers(0, 300))
    def test_is_a_probability(self, q, z):
        value = double_spend_probability(AttackScenario(q=q, z=z)).probability
        assert 0.0 <= value <= 1.0


class TestMinConfirmations:
    def test_golden_depths(self):
        assert min_confirmations(0.1, 0.001) == 5
        assert min_confirmations(0.3, 0.001) == 24

    def test_matches_scan_oracle(self):
        for q in (0.1, 0.15, 0.2, 0.25, 0.3):
            assert min_confirmations(q, 0.001) == scan_oracle(q, 0.001)

    def test_zero_depth_never_passes(self):
        assert min_confirmations(0.45, 0.999999) == 1

    def test_result_is_first_passing_depth(self):
        z = min_confirmations(0.2, 0.01)
        assert double_spend_probability(AttackScenario(q=0.2, z=z)).probability < 0.01
        assert double_spend_probability(AttackScenario(q=0.2, z=z - 1)).probability >= 0.01

    @pytest.mark.parametrize("q", [0.5, 0.7])
    def test_no_finite_depth(self, q):
        with pytest.raises(NoFiniteDepthError):
            min_confirmations(q, 0.001)

    @pytest.mark.parametrize("epsilon", [0.0, 1.0, -0.5])
    def test_rejects_bad_epsilon(self, epsilon):
        with pytest.raises(DomainError):
            min_confirmations(0.1, epsilon)

    def test_tiny_epsilon_uses_true_risk(self):
        z = min_confirmations(0.1, 1e-20)
        assert series_oracle(0.1, z) < 1e-20
        assert series_oracle(0.1, z - 1) >= 1e-20

    def test_epsilon_below_float_resolution(self):
        with pytest.raises(NoFiniteDepthError):
            min_confirmations(0.1, 1e-320)

    def test_confirmation_table(self):
        table = dict(confirmation_table([0.1, 0.15, 0.2, 0.25], 0.001))
        assert table == {0.1: 5, 0.15: 8, 0.2: 11, 0.25: 15}


class TestRiskSeries:
    def test_series_shape(self):
        points = risk_series(0.1, 10)
        assert [pt.z for pt in points] == list(range(11))
        assert points[0].double_spend == 1.0
        assert points[5].double_spend == pytest.approx(0.0009137, rel=1e-4)

    def test_rejects_negative_max(self):
        with pytest.raises(DomainError):
            risk_series(0.1, -1)


def test_attacker_lead_tail():
    scenario = AttackScenario(q=0.1, z=5)
    assert attacker_lead_tail(scenario) == pytest.approx(poisson.sf(5, 5 / 9))
