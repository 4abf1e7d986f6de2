"""Numeric building blocks: Bernoulli KL divergence, confidence radii,
count-weighted empirical log-likelihoods, and the regret lower-bound
calculators.

Everything here is a pure function of its inputs.  ``log`` means natural
logarithm throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .core import BanditInstance

__all__ = [
    "KL_EPS",
    "bernoulli_kl",
    "confidence_radius",
    "emp_loglik_reward",
    "emp_loglik_dueling",
    "LowerBoundReport",
    "lower_bound_general",
    "lower_bound_simplified",
    "collected_information",
]

# Empirical means hit 0 and 1 early in a run; clamping keeps the
# log-likelihoods finite and order-preserving.
KL_EPS = 1e-12


@njit(cache=True, nogil=True)
def _kl(p: float, q: float) -> float:
    lo, hi = KL_EPS, 1.0 - KL_EPS
    p = min(max(p, lo), hi)
    q = min(max(q, lo), hi)
    if p == q:
        return 0.0
    return p * np.log(p / q) + (1.0 - p) * np.log((1.0 - p) / (1.0 - q))


def bernoulli_kl(p, q):
    """KL divergence between Bernoulli(p) and Bernoulli(q).

    Arguments are clamped into [1e-12, 1 - 1e-12] before evaluation, so
    boundary values never produce infinities.  Accepts scalars or arrays.
    """
    if np.ndim(p) == 0 and np.ndim(q) == 0:
        return _kl(float(p), float(q))
    p = np.clip(np.asarray(p, dtype=np.float64), KL_EPS, 1.0 - KL_EPS)
    q = np.clip(np.asarray(q, dtype=np.float64), KL_EPS, 1.0 - KL_EPS)
    with np.errstate(invalid="ignore"):
        out = p * np.log(p / q) + (1.0 - p) * np.log((1.0 - p) / (1.0 - q))
    return np.where(p == q, 0.0, out)


def confidence_radius(t: int, K: int, delta: float, n: int) -> float:
    """Concentration half-width sqrt(2 log(K t / delta) / n).

    Warm-up guarantees n >= 1 before any radius is used; n == 0 is a
    caller error.
    """
    if n < 1:
        raise ValueError("confidence_radius requires n >= 1")
    return float(np.sqrt(2.0 * np.log(K * t / delta) / n))


def emp_loglik_reward(stats, k: int, ref_set) -> float:
    """Reward-side information for arm k against a reference arm set.

    N_k * kl(mu_hat_k, max over ref_set of mu_hat).  Zero when arm k
    itself attains the reference maximum.
    """
    idx = np.asarray(sorted(ref_set), dtype=np.int64) - 1
    ref_max = float(np.max(stats.mu_hat[idx]))
    return float(stats.N[k - 1]) * _kl(float(stats.mu_hat[k - 1]), ref_max)


def emp_loglik_dueling(stats, k: int, ref_set) -> float:
    """Dueling-side information for arm k against a reference arm set.

    Sums M_{k,l} * kl(nu_hat_{k,l}, 1/2) over reference arms that
    empirically beat arm k (strict: ties at 1/2 contribute nothing).
    """
    total = 0.0
    ki = k - 1
    for l in ref_set:
        li = l - 1
        if li == ki or stats.M[ki, li] < 1:
            continue
        v = stats.nu_hat[ki, li]
        if v < 0.5:
            total += stats.M[ki, li] * _kl(float(v), 0.5)
    return float(total)


@dataclass
class LowerBoundReport:
    """Per-arm lower-bound coefficients of log T.

    ``per_arm_terms`` maps arm k (k != 1) to
    (reward_term, dueling_term, min_term); ``best_competitor`` maps k to
    the most effective arm to duel against (ties broken toward the
    smallest index).  ``total_simplified`` omits the unknown universal
    constant of the simplified bound; ``simplified_precondition_violations``
    lists arms whose best competitor is not arm 1, for which the
    simplified form is not backed by theory.
    """

    alpha: float
    per_arm_terms: dict[int, tuple[float, float, float]] = field(default_factory=dict)
    best_competitor: dict[int, int] = field(default_factory=dict)
    simplified_terms: dict[int, float] = field(default_factory=dict)
    total_general: float = 0.0
    total_simplified: float = 0.0
    simplified_precondition_violations: list[int] = field(default_factory=list)


def lower_bound_general(inst: BanditInstance, alpha: float) -> LowerBoundReport:
    """Evaluate the general asymptotic lower bound on an instance.

    For each suboptimal arm the reward-route cost is
    alpha * gapR_k / kl(mu_k, mu_1), the dueling-route cost is the best
    (1-alpha) * (gapD_k + gapD_l) / kl(nu_{k,l}, 1/2) over better arms l,
    and the arm contributes the smaller of the two.
    """
    report = LowerBoundReport(alpha=alpha)
    mu, nu = inst.mu, inst.nu
    gr, gd = inst.reward_gaps, inst.dueling_gaps
    for k in range(2, inst.K + 1):
        ki = k - 1
        reward_term = alpha * gr[ki] / _kl(float(mu[ki]), float(mu[0]))
        best_l, best_ratio = 1, np.inf
        for l in range(1, k):
            li = l - 1
            ratio = (gd[ki] + gd[li]) / _kl(float(nu[ki, li]), 0.5)
            if ratio < best_ratio:
                best_l, best_ratio = l, ratio
        dueling_term = (1.0 - alpha) * best_ratio
        min_term = min(reward_term, dueling_term)
        report.per_arm_terms[k] = (reward_term, dueling_term, min_term)
        report.best_competitor[k] = best_l
        report.total_general += min_term
        simp = _simplified_term(alpha, float(gr[ki]), float(gd[ki]))
        report.simplified_terms[k] = simp
        report.total_simplified += simp
        if best_l != 1:
            report.simplified_precondition_violations.append(k)
    return report


def _simplified_term(alpha: float, gap_r: float, gap_d: float) -> float:
    # 1 / max{gapR/alpha, gapD/(1-alpha)}, with x/0 read as +inf
    ratio_r = gap_r / alpha if alpha > 0.0 else np.inf
    ratio_d = gap_d / (1.0 - alpha) if alpha < 1.0 else np.inf
    m = max(ratio_r, ratio_d)
    return 0.0 if not np.isfinite(m) or m == 0.0 else 1.0 / m


def lower_bound_simplified(inst: BanditInstance, alpha: float) -> LowerBoundReport:
    """Simplified per-arm bound 1 / max{gapR/alpha, gapD/(1-alpha)}.

    The precondition (every arm's best competitor is arm 1) is reported,
    not enforced: offending arms are listed on the returned report.
    """
    return lower_bound_general(inst, alpha)


def collected_information(inst: BanditInstance, N, M) -> np.ndarray:
    """Post-hoc diagnostic: per-arm information gathered by a finished run.

    For arm k this is N_k * kl(mu_k, mu_1) plus the sum over better arms l
    of M_{k,l} * kl(nu_{k,l}, 1/2), to be eyeballed against log T.  Purely
    informational; no assertion is implied.
    """
    N = np.asarray(N)
    M = np.asarray(M)
    out = np.zeros(inst.K)
    for k in range(2, inst.K + 1):
        ki = k - 1
        total = N[ki] * _kl(float(inst.mu[ki]), float(inst.mu[0]))
        for l in range(1, k):
            total += M[ki, l - 1] * _kl(float(inst.nu[ki, l - 1]), 0.5)
        out[ki] = total
    return out
