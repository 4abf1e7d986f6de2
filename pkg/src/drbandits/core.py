"""Core model: bandit instances, feedback sampling, and regret accounting.

Arms are identified by 1-based ids (arm 1 is the optimal arm and the
Condorcet winner).  All numpy arrays are 0-based, so arm ``k`` lives at
index ``k - 1``; every public function that takes or returns an arm id
uses the 1-based convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

__all__ = [
    "BanditInstance",
    "Action",
    "RoundOutcome",
    "RegretLedger",
    "RngStream",
    "ValidationReport",
    "validate_instance",
    "sample_round",
    "instantaneous_regret",
    "accumulate",
    "load_instance",
    "InstanceFileError",
]

# channel labels for per-repetition RNG sub-streams
CHANNEL_REWARD = 0
CHANNEL_DUEL = 1
CHANNEL_POLICY = 2

_CHANNELS = {"reward": CHANNEL_REWARD, "duel": CHANNEL_DUEL, "policy": CHANNEL_POLICY}


class InstanceFileError(Exception):
    """Raised when an instance file is malformed or fails validation."""


@dataclass(frozen=True)
class BanditInstance:
    """Ground truth of a dueling-reward bandit.

    Attributes
    ----------
    K : number of arms (>= 2)
    mu : shape (K,) reward means, strictly descending, each in (0, 1)
    nu : shape (K, K) dueling probabilities; ``nu[k-1, l-1]`` is the
        probability that arm k wins a duel against arm l
    """

    K: int
    mu: np.ndarray
    nu: np.ndarray
    # gaps are precomputed once; the run loop reads them every round
    reward_gaps: np.ndarray = field(init=False, repr=False)
    dueling_gaps: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        mu = np.asarray(self.mu, dtype=np.float64)
        nu = np.asarray(self.nu, dtype=np.float64)
        mu.setflags(write=False)
        nu.setflags(write=False)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "nu", nu)
        if mu.shape == (self.K,) and nu.shape == (self.K, self.K):
            rg = mu[0] - mu
            dg = nu[0, :] - 0.5
            dg = dg.copy()
            dg[0] = 0.0
        else:
            # invalid shapes are reported by validate_instance; keep zeros
            rg = np.zeros(self.K)
            dg = np.zeros(self.K)
        rg.setflags(write=False)
        dg.setflags(write=False)
        object.__setattr__(self, "reward_gaps", rg)
        object.__setattr__(self, "dueling_gaps", dg)

    def reward_gap(self, k: int) -> float:
        """Reward gap of arm k versus arm 1."""
        return float(self.reward_gaps[k - 1])

    def dueling_gap(self, k: int) -> float:
        """Dueling gap of arm k: its losing margin against arm 1."""
        return float(self.dueling_gaps[k - 1])


@dataclass(frozen=True)
class Action:
    """One round's decision: a reward arm and an ordered duel pair.

    A self-duel (both pair members equal) is allowed and is how policies
    exploit on the dueling side.
    """

    reward_arm: int
    duel_pair: tuple[int, int]

    def validate(self, K: int) -> None:
        k = self.reward_arm
        k1, k2 = self.duel_pair
        for a in (k, k1, k2):
            if not (1 <= a <= K):
                raise ValueError(f"arm id {a} out of range [1, {K}]")


@dataclass(frozen=True)
class RoundOutcome:
    """Observed feedback: a binary reward and the winning arm of the duel."""

    reward: int
    duel_winner: int


@dataclass
class RegretLedger:
    """Running regret totals, weighted by alpha.

    Maintains ``cum_total == alpha * cum_reward_regret +
    (1 - alpha) * cum_dueling_regret`` after every update.
    """

    alpha: float
    cum_reward_regret: float = 0.0
    cum_dueling_regret: float = 0.0

    @property
    def cum_total(self) -> float:
        return self.alpha * self.cum_reward_regret + (1.0 - self.alpha) * self.cum_dueling_regret


class RngStream:
    """A deterministic per-(repetition, channel) random stream.

    Streams are derived from a 64-bit base seed via
    ``numpy.random.SeedSequence([base_seed, rep, channel])``, so the same
    (seed, label) always yields the same bit stream regardless of how
    repetitions are scheduled.
    """

    def __init__(self, base_seed: int, rep: int = 0, channel: int | str = CHANNEL_REWARD):
        if isinstance(channel, str):
            channel = _CHANNELS[channel]
        self.base_seed = int(base_seed)
        self.rep = int(rep)
        self.channel = int(channel)
        seq = np.random.SeedSequence([self.base_seed, self.rep, self.channel])
        self.generator = np.random.default_rng(seq)

    def uniform(self, n: int | None = None):
        if n is None:
            return self.generator.random()
        return self.generator.random(n)


@dataclass
class ValidationReport:
    """Outcome of instance validation: ok, or a list of violations."""

    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_instance(inst: BanditInstance) -> ValidationReport:
    """Check every instance invariant and report each violation found.

    Dimension mismatches are reported first and short-circuit the entry-wise
    checks, which would otherwise be meaningless.
    """
    report = ValidationReport()
    K, mu, nu = inst.K, inst.mu, inst.nu

    if K < 2:
        report.violations.append(f"dimension: arm count K={K} must be >= 2")
        return report
    if mu.shape != (K,):
        report.violations.append(f"dimension: mu has shape {mu.shape}, expected ({K},)")
    if nu.shape != (K, K):
        report.violations.append(f"dimension: nu has shape {nu.shape}, expected ({K}, {K})")
    if report.violations:
        return report

    for k in range(K):
        if not (0.0 < mu[k] < 1.0):
            report.violations.append(f"range: mu_{k + 1}={mu[k]} outside (0,1)")
    for k in range(K):
        for l in range(K):
            if not (0.0 < nu[k, l] < 1.0):
                report.violations.append(f"range: nu at ({k + 1},{l + 1})={nu[k, l]} outside (0,1)")

    # strictly descending means (ties are rejected: behavior on equal means
    # is undefined, see module design notes)
    for k in range(K - 1):
        if not (mu[k] > mu[k + 1]):
            report.violations.append(
                f"mu ordering at ({k + 1},{k + 2}): {mu[k]} must exceed {mu[k + 1]}"
            )

    for k in range(K):
        if nu[k, k] != 0.5:
            report.violations.append(f"diagonal at ({k + 1},{k + 1}): {nu[k, k]} != 0.5")

    for k in range(K):
        for l in range(k + 1, K):
            if abs(nu[k, l] + nu[l, k] - 1.0) > 1e-12:
                report.violations.append(
                    f"antisymmetry at ({k + 1},{l + 1}): "
                    f"{nu[k, l]} + {nu[l, k]} != 1"
                )

    for k in range(K):
        for l in range(K):
            if k == l:
                continue
            if (mu[k] > mu[l]) != (nu[k, l] > 0.5):
                report.violations.append(f"order consistency at ({k + 1},{l + 1})")

    return report


def sample_round(inst: BanditInstance, reward_rng, duel_rng, action: Action) -> RoundOutcome:
    """Sample one round of feedback from the ground-truth instance.

    The reward and the duel use independent streams; each consumes exactly
    one uniform draw per round (self-duels included, with win probability
    0.5 by the diagonal convention).
    """
    if isinstance(reward_rng, RngStream):
        reward_rng = reward_rng.generator
    if isinstance(duel_rng, RngStream):
        duel_rng = duel_rng.generator
    k = action.reward_arm
    k1, k2 = action.duel_pair
    reward = 1 if reward_rng.random() < inst.mu[k - 1] else 0
    winner = k1 if duel_rng.random() < inst.nu[k1 - 1, k2 - 1] else k2
    return RoundOutcome(reward=reward, duel_winner=winner)


def instantaneous_regret(inst: BanditInstance, alpha: float, action: Action) -> float:
    """Weighted one-round regret of an action, from ground-truth gaps."""
    k = action.reward_arm
    k1, k2 = action.duel_pair
    r = inst.reward_gaps[k - 1]
    d = 0.5 * (inst.dueling_gaps[k1 - 1] + inst.dueling_gaps[k2 - 1])
    return alpha * r + (1.0 - alpha) * d


def accumulate(ledger: RegretLedger, inst: BanditInstance, action: Action) -> RegretLedger:
    """Add one round's regret components to the ledger (in place)."""
    k = action.reward_arm
    k1, k2 = action.duel_pair
    ledger.cum_reward_regret += inst.reward_gaps[k - 1]
    ledger.cum_dueling_regret += 0.5 * (inst.dueling_gaps[k1 - 1] + inst.dueling_gaps[k2 - 1])
    return ledger


def load_instance(path: str | Path) -> BanditInstance:
    """Load an instance file (YAML/JSON with fields K, mu, nu) and validate it.

    Raises InstanceFileError with the full violation list if the file does
    not describe a valid instance.
    """
    path = Path(path)
    try:
        data = yaml.safe_load(path.read_text())
    except (OSError, yaml.YAMLError) as exc:
        raise InstanceFileError(f"cannot read instance file {path}: {exc}") from exc
    if not isinstance(data, dict) or not {"K", "mu", "nu"} <= set(data):
        raise InstanceFileError(f"{path}: expected mapping with fields K, mu, nu")
    try:
        inst = BanditInstance(
            K=int(data["K"]),
            mu=np.asarray(data["mu"], dtype=np.float64),
            nu=np.asarray(data["nu"], dtype=np.float64),
        )
    except (TypeError, ValueError) as exc:
        raise InstanceFileError(f"{path}: malformed numeric data: {exc}") from exc
    report = validate_instance(inst)
    if not report.ok:
        lines = "\n".join(f"  - {v}" for v in report.violations)
        raise InstanceFileError(f"{path}: invalid instance:\n{lines}")
    return inst
