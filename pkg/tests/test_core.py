"""Instance model, validation, sampling, and regret accounting."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from drbandits.core import (
    Action,
    BanditInstance,
    InstanceFileError,
    RegretLedger,
    RngStream,
    RoundOutcome,
    accumulate,
    instantaneous_regret,
    load_instance,
    sample_round,
    validate_instance,
)


def inst_of(mu, nu, K=None):
    mu = np.asarray(mu, dtype=np.float64)
    return BanditInstance(K=K or len(mu), mu=mu, nu=np.asarray(nu, dtype=np.float64))


class TestValidateInstance:
    def test_minimal_consistent_instance_ok(self, k2_instance):
        assert validate_instance(k2_instance).ok

    def test_k16_builtin_ok(self, k16_instance):
        assert validate_instance(k16_instance).ok

    def test_order_consistency_violation(self):
        inst = inst_of([0.9, 0.6], [[0.5, 0.4], [0.6, 0.5]])
        report = validate_instance(inst)
        assert not report.ok
        assert any("order consistency at (1,2)" in v for v in report.violations)

    def test_dimension_mismatch_is_distinct_and_short_circuits(self):
        inst = inst_of([0.9, 0.6, 0.3], [[0.5, 0.7], [0.3, 0.5]], K=3)
        report = validate_instance(inst)
        assert not report.ok
        assert all(v.startswith("dimension") for v in report.violations)

    def test_mean_tie_rejected(self):
        inst = inst_of([0.9, 0.9], [[0.5, 0.7], [0.3, 0.5]])
        report = validate_instance(inst)
        assert any("mu ordering" in v for v in report.violations)

    def test_diagonal_violation(self):
        inst = inst_of([0.9, 0.6], [[0.6, 0.7], [0.3, 0.5]])
        report = validate_instance(inst)
        assert any("diagonal at (1,1)" in v for v in report.violations)

    def test_antisymmetry_violation(self):
        inst = inst_of([0.9, 0.6], [[0.5, 0.7], [0.31, 0.5]])
        report = validate_instance(inst)
        assert any("antisymmetry at (1,2)" in v for v in report.violations)

    def test_range_violation(self):
        inst = inst_of([1.2, 0.6], [[0.5, 0.7], [0.3, 0.5]])
        report = validate_instance(inst)
        assert any("range: mu_1" in v for v in report.violations)

    def test_condorcet_winner_property(self, k16_instance):
        # arm 1 has the top mean and beats every other arm
        assert np.argmax(k16_instance.mu) == 0
        assert all(k16_instance.nu[0, k] > 0.5 for k in range(1, k16_instance.K))


class TestGaps:
    def test_k16_arm2(self, k16_instance):
        assert k16_instance.reward_gap(2) == pytest.approx(0.06, abs=1e-12)
        assert k16_instance.dueling_gap(2) == pytest.approx(0.04, abs=1e-12)

    def test_optimal_arm_zero_gaps(self, k16_instance, k2_instance):
        for inst in (k16_instance, k2_instance):
            assert inst.reward_gap(1) == 0.0
            assert inst.dueling_gap(1) == 0.0

    def test_k16_arm16(self, k16_instance):
        assert k16_instance.reward_gap(16) == pytest.approx(0.76, abs=1e-12)
        assert k16_instance.dueling_gap(16) == pytest.approx(0.48, abs=1e-12)

    def test_gaps_positive_for_suboptimal(self, k16_instance):
        assert np.all(k16_instance.reward_gaps[1:] > 0)
        assert np.all(k16_instance.dueling_gaps[1:] > 0)


class TestSampleRound:
    def test_degenerate_mean_gives_constant_reward(self):
        # fixture bypasses the (0,1) validation on purpose
        inst = inst_of([1.0, 0.6], [[0.5, 0.7], [0.3, 0.5]])
        rng_r = RngStream(1, 0, "reward")
        rng_d = RngStream(1, 0, "duel")
        action = Action(reward_arm=1, duel_pair=(1, 2))
        assert all(
            sample_round(inst, rng_r, rng_d, action).reward == 1 for _ in range(200)
        )

    def test_self_duel_winner_is_fair_coin(self, k2_instance):
        rng_r = RngStream(7, 0, "reward")
        rng_d = RngStream(7, 0, "duel")
        action = Action(reward_arm=1, duel_pair=(2, 2))
        wins = sum(
            sample_round(k2_instance, rng_r, rng_d, action).duel_winner == 2
            for _ in range(10_000)
        )
        assert wins == 10_000  # both pair members are arm 2

    def test_reward_monte_carlo(self):
        inst = inst_of([0.75, 0.6], [[0.5, 0.7], [0.3, 0.5]])
        n = 1_000_000
        u = RngStream(11, 0, "reward").uniform(n)
        emp = float(np.mean(u < 0.75))
        assert emp == pytest.approx(0.75, abs=0.002)

    def test_duel_monte_carlo(self, k2_instance):
        n = 1_000_000
        u = RngStream(13, 0, "duel").uniform(n)
        nu = k2_instance.nu[0, 1]
        emp = float(np.mean(u < nu))
        assert abs(emp - nu) <= 3.0 * np.sqrt(nu * (1 - nu) / n)

    def test_winner_is_pair_member(self, k5_instance):
        rng_r = RngStream(3, 0, "reward")
        rng_d = RngStream(3, 0, "duel")
        for _ in range(100):
            action = Action(reward_arm=2, duel_pair=(3, 5))
            out = sample_round(k5_instance, rng_r, rng_d, action)
            assert out.duel_winner in (3, 5)
            assert out.reward in (0, 1)


class TestRegret:
    def test_optimal_action_zero(self, k16_instance):
        action = Action(reward_arm=1, duel_pair=(1, 1))
        for alpha in (0.0, 0.3, 1.0):
            assert instantaneous_regret(k16_instance, alpha, action) == 0.0

    def test_k16_hand_example(self, k16_instance):
        action = Action(reward_arm=2, duel_pair=(1, 3))
        val = instantaneous_regret(k16_instance, 0.5, action)
        assert val == pytest.approx(0.0475, abs=1e-12)

    def test_alpha_one_ignores_duel(self, k16_instance):
        action = Action(reward_arm=1, duel_pair=(5, 9))
        assert instantaneous_regret(k16_instance, 1.0, action) == 0.0

    def test_accumulate_zero_forever(self, k16_instance):
        ledger = RegretLedger(alpha=0.5)
        action = Action(reward_arm=1, duel_pair=(1, 1))
        for _ in range(1000):
            accumulate(ledger, k16_instance, action)
        assert ledger.cum_total == 0.0

    def test_accumulate_additivity(self, k16_instance):
        ledger = RegretLedger(alpha=0.5)
        action = Action(reward_arm=2, duel_pair=(1, 3))
        accumulate(ledger, k16_instance, action)
        accumulate(ledger, k16_instance, action)
        assert ledger.cum_total == pytest.approx(0.0950, abs=1e-12)

    def test_accumulate_components(self, k16_instance):
        ledger = RegretLedger(alpha=0.5)
        accumulate(ledger, k16_instance, Action(reward_arm=2, duel_pair=(1, 3)))
        assert ledger.cum_reward_regret == pytest.approx(0.06, abs=1e-12)
        assert ledger.cum_dueling_regret == pytest.approx(0.035, abs=1e-12)

    @given(
        st.lists(
            st.tuples(
                st.integers(1, 16), st.integers(1, 16), st.integers(1, 16)
            ),
            min_size=1,
            max_size=200,
        ),
        st.floats(0.0, 1.0),
    )
    @settings(max_examples=50, deadline=None)
    def test_ledger_weighted_identity(self, actions, alpha):
        inst = BanditInstance(
            K=16,
            mu=np.linspace(0.86, 0.10, 16),
            nu=np.clip(
                0.5 + 0.03 * (np.arange(16)[None, :] - np.arange(16)[:, None]),
                0.02,
                0.98,
            ),
        )
        ledger = RegretLedger(alpha=alpha)
        prev = 0.0
        for k, k1, k2 in actions:
            accumulate(ledger, inst, Action(reward_arm=k, duel_pair=(k1, k2)))
            expect = alpha * ledger.cum_reward_regret + (1 - alpha) * ledger.cum_dueling_regret
            assert ledger.cum_total == pytest.approx(expect, abs=1e-9)
            assert ledger.cum_total >= prev - 1e-12
            prev = ledger.cum_total


class TestRngStream:
    def test_identical_labels_identical_streams(self):
        a = RngStream(42, 3, "policy").uniform(1000)
        b = RngStream(42, 3, "policy").uniform(1000)
        assert np.array_equal(a, b)

    def test_channels_differ(self):
        a = RngStream(42, 3, "reward").uniform(100)
        b = RngStream(42, 3, "duel").uniform(100)
        assert not np.array_equal(a, b)

    def test_reps_differ(self):
        a = RngStream(42, 0, "reward").uniform(100)
        b = RngStream(42, 1, "reward").uniform(100)
        assert not np.array_equal(a, b)


class TestLoadInstance:
    def test_roundtrip(self, tmp_path):
        path = tmp_path / "inst.yaml"
        path.write_text(
            "K: 2\nmu: [0.9, 0.6]\nnu: [[0.5, 0.7], [0.3, 0.5]]\n"
        )
        inst = load_instance(path)
        assert inst.K == 2
        assert validate_instance(inst).ok

    def test_invalid_instance_lists_violations(self, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text(
            "K: 2\nmu: [0.9, 0.6]\nnu: [[0.5, 0.4], [0.6, 0.5]]\n"
        )
        with pytest.raises(InstanceFileError, match="order consistency"):
            load_instance(path)

    def test_missing_fields(self, tmp_path):
        path = tmp_path / "short.yaml"
        path.write_text("K: 2\nmu: [0.9, 0.6]\n")
        with pytest.raises(InstanceFileError, match="expected mapping"):
            load_instance(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InstanceFileError, match="cannot read"):
            load_instance(tmp_path / "nope.yaml")


def test_outcome_and_action_types():
    action = Action(reward_arm=2, duel_pair=(1, 3))
    action.validate(3)
    with pytest.raises(ValueError, match="out of range"):
        Action(reward_arm=4, duel_pair=(1, 3)).validate(3)
    out = RoundOutcome(reward=1, duel_winner=3)
    assert out.reward == 1 and out.duel_winner == 3
