"""Policies: the stepwise interface plus the four concrete algorithms.

Every policy follows the same protocol: construct it, then alternate
``select_action(t)`` / ``observe(t, outcome)`` for rounds t = 1, 2, ...
(the horizon includes the K(K-1) warm-up rounds, which every policy plays
identically).  Policies never see the ground-truth instance; they only
consume observed feedback.

The decision rules themselves live in ``_kernels`` as compiled functions,
shared with the full-horizon experiment drivers.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

logger = logging.getLogger(__name__)

from . import _kernels as k_
from .core import Action, RoundOutcome

__all__ = [
    "SufficientStats",
    "PolicyParams",
    "Policy",
    "ElimFusion",
    "DecoFusion",
    "ElimNoFusion",
    "MEDNoFusion",
    "policy_init",
    "warmup_action",
    "statistics_update",
    "POLICY_KINDS",
]


class SufficientStats:
    """Per-arm and per-pair empirical statistics shared by all policies.

    Arrays are 0-based (arm k at index k - 1).  ``M`` and ``nu_hat`` keep
    both symmetric entries in sync: a duel (k, l) increments M[k-1,l-1]
    and M[l-1,k-1] and updates the two win-rate estimates as complements.
    """

    def __init__(self, K: int):
        self.K = K
        self.N = np.zeros(K, dtype=np.int64)
        self.mu_hat = np.zeros(K, dtype=np.float64)
        self.M = np.zeros((K, K), dtype=np.int64)
        self.nu_hat = np.zeros((K, K), dtype=np.float64)
        # the diagonal is fixed by convention and never updated
        np.fill_diagonal(self.nu_hat, 0.5)


def warmup_action(K: int, j: int) -> Action:
    """Action for warm-up slot j in [0, K(K-1))."""
    if not 0 <= j < K * (K - 1):
        raise ValueError(f"warm-up slot {j} out of range [0, {K * (K - 1)})")
    k, a, b = k_.warmup_slot(K, j)
    return Action(reward_arm=k + 1, duel_pair=(a + 1, b + 1))


def statistics_update(stats: SufficientStats, action: Action, outcome: RoundOutcome) -> SufficientStats:
    """Fold one round of feedback into the statistics (in place)."""
    k_.update_stats(
        stats.N, stats.mu_hat, stats.M, stats.nu_hat,
        action.reward_arm - 1, action.duel_pair[0] - 1, action.duel_pair[1] - 1,
        float(outcome.reward), outcome.duel_winner - 1,
    )
    return stats


@dataclass
class PolicyParams:
    """Tunables shared by the policy family.

    delta_rule resolves the elimination confidence parameter once the
    horizon is known: a float is used as-is, "1/T" and "1/(K^2T^2)" are
    the experimental and theoretical schedules.  f_of_K = (a, b) means
    f(K) = a * K**b for the divergence-threshold policies.
    """

    alpha: float = 0.5
    delta_rule: float | str = "1/T"
    f_of_K: tuple[float, float] = (0.05, 1.01)

    def resolve_delta(self, K: int, T: int) -> float:
        if isinstance(self.delta_rule, (int, float)):
            delta = float(self.delta_rule)
        elif self.delta_rule == "1/T":
            delta = 1.0 / T
        elif self.delta_rule in ("1/(K^2T^2)", "1/(K2T2)"):
            delta = 1.0 / (K * K * float(T) * T)
        else:
            raise ValueError(f"unknown delta rule: {self.delta_rule!r}")
        if not 0.0 < delta < 1.0:
            raise ValueError(f"delta={delta} outside (0,1)")
        return delta

    def f_value(self, K: int) -> float:
        a, b = self.f_of_K
        return a * K ** b


class Policy:
    """Common scaffolding: warm-up phase and statistics bookkeeping."""

    def __init__(self, K: int, params: PolicyParams, horizon: int, rng=None):
        if K < 2:
            raise ValueError("need at least two arms")
        self.K = K
        self.params = params
        self.horizon = horizon
        self.stats = SufficientStats(K)
        self.warmup_len = K * (K - 1)
        self.rng = rng if rng is not None else np.random.default_rng()
        self._last_action: Action | None = None

    @property
    def name(self) -> str:
        return type(self).__name__

    def in_warmup(self, t: int) -> bool:
        return t <= self.warmup_len

    def select_action(self, t: int) -> Action:
        if self.in_warmup(t):
            action = warmup_action(self.K, t - 1)
        else:
            action = self._select(t)
        self._last_action = action
        return action

    def observe(self, t: int, outcome: RoundOutcome) -> None:
        action = self._last_action
        if action is None:
            raise RuntimeError("observe() before select_action()")
        if not self.in_warmup(t):
            self._pre_stats_update(t, action, outcome)
        statistics_update(self.stats, action, outcome)
        if not self.in_warmup(t):
            self._post_stats_update(t, action, outcome)
        self._last_action = None

    # hooks for concrete policies
    def _select(self, t: int) -> Action:
        raise NotImplementedError

    def _pre_stats_update(self, t, action, outcome) -> None:
        pass

    def _post_stats_update(self, t, action, outcome) -> None:
        pass


class ElimFusion(Policy):
    """Shared-candidate-set elimination over both feedback types.

    Uniformly explores the candidate set through both channels; an arm is
    dropped as soon as either the reward confidence intervals or a dueling
    upper bound rules it out.  A singleton set means pure exploitation.
    """

    def __init__(self, K, params, horizon, rng=None):
        super().__init__(K, params, horizon, rng)
        self.delta = params.resolve_delta(K, horizon)
        self.candidate = np.ones(K, dtype=np.bool_)

    @property
    def candidate_set(self) -> set[int]:
        return {int(k) + 1 for k in np.flatnonzero(self.candidate)}

    def _select(self, t):
        k, k1, k2 = k_.elim_select(self.stats.N, self.stats.M, self.candidate)
        return Action(reward_arm=k + 1, duel_pair=(k1 + 1, k2 + 1))

    def _post_stats_update(self, t, action, outcome):
        s = self.stats
        k_.elimfusion_post(s.N, s.mu_hat, s.M, s.nu_hat, self.candidate, t + 1, self.K, self.delta)


class ElimNoFusion(Policy):
    """Baseline: one elimination run per channel, sharing nothing.

    The reward channel keeps its own candidate set and only ever applies
    the reward-UCB clause; the dueling channel likewise with the dueling
    clause.
    """

    def __init__(self, K, params, horizon, rng=None):
        super().__init__(K, params, horizon, rng)
        self.delta = params.resolve_delta(K, horizon)
        self.candidate_r = np.ones(K, dtype=np.bool_)
        self.candidate_d = np.ones(K, dtype=np.bool_)

    def _select(self, t):
        k, _, _ = k_.elim_select(self.stats.N, self.stats.M, self.candidate_r)
        _, k1, k2 = k_.elim_select(self.stats.N, self.stats.M, self.candidate_d)
        return Action(reward_arm=k + 1, duel_pair=(k1 + 1, k2 + 1))

    def _post_stats_update(self, t, action, outcome):
        s = self.stats
        k_.elimnofusion_post(
            s.N, s.mu_hat, s.M, s.nu_hat, self.candidate_r, self.candidate_d,
            t + 1, self.K, self.delta,
        )


class DecoFusion(Policy):
    """Decomposition fusion: explore one feedback type, exploit the other.

    Each round rebuilds two overlapping arm sets from the per-feedback
    information measures, then flips a biased coin (threshold
    alpha^2 / (alpha^2 + (1-alpha)^2)) to decide which channel explores
    the next listed arm while the other channel exploits its estimated
    optimum.
    """

    def __init__(self, K, params, horizon, rng=None):
        super().__init__(K, params, horizon, rng)
        self.fK = params.f_value(K)
        self.beta = params.alpha ** 2 / (params.alpha ** 2 + (1.0 - params.alpha) ** 2)
        self.IR = np.zeros(K)
        self.ID = np.zeros(K)
        self.explore = np.ones(K, dtype=np.bool_)      # set E
        self.pending = np.zeros(K, dtype=np.bool_)     # set B
        self.set_d = np.ones(K, dtype=np.bool_)        # decomposition set for dueling
        self.set_r = np.ones(K, dtype=np.bool_)        # decomposition set for rewards
        self.khat_r = 0
        self.khat_d = 0
        self._k_exp = -1
        self.dueling_explore_rounds = 0
        self.fallback_rounds = 0

    def _select(self, t):
        thr = np.log(t) + self.fK
        self.khat_r, self.khat_d = k_.deco_decompose(
            self.IR, self.ID, self.stats.mu_hat, thr, self.set_d, self.set_r
        )
        u = self.rng.random()
        k, k1, k2, k_exp = k_.deco_decide(
            self.stats.nu_hat, self.set_d, self.explore, self.khat_r, self.khat_d, u, self.beta
        )
        self._k_exp = k_exp
        if k_exp < 0:
            self.fallback_rounds += 1
            logger.debug("round %d: exploration list empty, exploiting both channels", t)
        elif u <= self.beta:
            self.dueling_explore_rounds += 1
        return Action(reward_arm=k + 1, duel_pair=(k1 + 1, k2 + 1))

    def _pre_stats_update(self, t, action, outcome):
        thr = np.log(t) + self.fK
        k_.deco_eset_update(
            self.explore, self.pending, self.set_r, self.set_d,
            self.IR, self.ID, self.khat_d, thr, self._k_exp,
        )

    def _post_stats_update(self, t, action, outcome):
        s = self.stats
        k_.info_update(s.N, s.mu_hat, s.M, s.nu_hat, self.set_r, self.set_d, self.IR, self.ID)


class MEDNoFusion(Policy):
    """Baseline: minimum-empirical-divergence exploration per channel.

    The reward channel traverses the list of arms whose reward information
    is below log t + f(K); the dueling channel does the same with the
    dueling-information deficit and picks its comparison arm RMED1-style
    over the full arm set.  The channels share nothing.
    """

    def __init__(self, K, params, horizon, rng=None):
        super().__init__(K, params, horizon, rng)
        self.fK = params.f_value(K)
        self.IR = np.zeros(K)
        self.ID = np.zeros(K)
        self.explore_r = np.ones(K, dtype=np.bool_)
        self.pending_r = np.zeros(K, dtype=np.bool_)
        self.explore_d = np.ones(K, dtype=np.bool_)
        self.pending_d = np.zeros(K, dtype=np.bool_)
        self._full = np.ones(K, dtype=np.bool_)
        self._k_exp_d = -1
        self._khat_d = 0

    def _select(self, t):
        s = self.stats
        k = k_.med_select_reward(s.N, self.IR, s.mu_hat, self.explore_r)
        k1, k2, self._k_exp_d, self._khat_d = k_.med_select_duel(
            self.ID, s.nu_hat, self.explore_d
        )
        self._k_r = k
        return Action(reward_arm=k + 1, duel_pair=(k1 + 1, k2 + 1))

    def _pre_stats_update(self, t, action, outcome):
        thr = np.log(t) + self.fK
        k_.explore_list_update(self.explore_r, self.pending_r, self.IR, thr, self._k_r)
        score_d = self.ID - self.ID[self._khat_d]
        k_.explore_list_update(self.explore_d, self.pending_d, score_d, thr, self._k_exp_d)

    def _post_stats_update(self, t, action, outcome):
        s = self.stats
        k_.info_update(s.N, s.mu_hat, s.M, s.nu_hat, self._full, self._full, self.IR, self.ID)


POLICY_KINDS = {
    "ElimFusion": ElimFusion,
    "DecoFusion": DecoFusion,
    "ElimNoFusion": ElimNoFusion,
    "MEDNoFusion": MEDNoFusion,
}


def policy_init(kind: str, K: int, params: PolicyParams, horizon: int, rng=None) -> Policy:
    """Construct a policy by name; all four start in the warm-up phase."""
    try:
        cls = POLICY_KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown policy kind {kind!r}; choose from {sorted(POLICY_KINDS)}")
    return cls(K, params, horizon, rng=rng)
