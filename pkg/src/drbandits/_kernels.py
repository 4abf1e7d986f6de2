"""Compiled inner loops shared by the stepwise policies and the experiment
drivers.

Everything in this module works with 0-based arm indices and raw numpy
state arrays; the public policy classes translate to 1-based arm ids at
their boundary.  The full-horizon ``run_*`` drivers exist because the
acceptance-scale experiments execute on the order of 10^8 rounds; they
call the exact same step functions as the stepwise classes, so there is a
single implementation of each decision rule.
"""

import numpy as np
from numba import njit

from .analysis import _kl

_JIT = dict(cache=True, nogil=True)


# ---------------------------------------------------------------------------
# shared pieces: warm-up schedule, statistics update, confidence radius


@njit(**_JIT)
def warmup_slot(K, j):
    """Action for warm-up slot j in [0, K(K-1)): (reward arm, duel pair).

    Duel pairs are the ordered pairs (k, l), k != l, in lexicographic
    order; reward arms cycle round-robin.
    """
    k = j % K
    a = j // (K - 1)
    r = j % (K - 1)
    b = r if r < a else r + 1
    return k, a, b


@njit(**_JIT)
def update_stats(N, mu_hat, M, nu_hat, k, k1, k2, reward, winner):
    """Incremental-mean statistics update for one round.

    Off-diagonal duels update both symmetric counters; self-duels carry no
    pairwise information and leave the dueling side untouched.
    """
    N[k] += 1
    mu_hat[k] += (reward - mu_hat[k]) / N[k]
    if k1 != k2:
        w1 = 1.0 if winner == k1 else 0.0
        M[k1, k2] += 1
        M[k2, k1] += 1
        nu_hat[k1, k2] += (w1 - nu_hat[k1, k2]) / M[k1, k2]
        nu_hat[k2, k1] += ((1.0 - w1) - nu_hat[k2, k1]) / M[k2, k1]


@njit(**_JIT)
def _radius(t, K, delta, n):
    return np.sqrt(2.0 * np.log(K * t / delta) / n)


# ---------------------------------------------------------------------------
# elimination policies


@njit(**_JIT)
def elim_select(N, M, active):
    """Uniform-exploration action over a candidate set.

    Least-pulled arm and least-dueled ordered pair, ties broken toward the
    smallest index / lexicographically smallest pair.  A singleton set
    means exploitation: pull the survivor and self-duel it.
    """
    K = N.shape[0]
    count = 0
    last = 0
    for k in range(K):
        if active[k]:
            count += 1
            last = k
    if count == 1:
        return last, last, last
    best_k = -1
    for k in range(K):
        if active[k] and (best_k < 0 or N[k] < N[best_k]):
            best_k = k
    b1 = -1
    b2 = -1
    for k in range(K):
        if not active[k]:
            continue
        for l in range(K):
            if l == k or not active[l]:
                continue
            if b1 < 0 or M[k, l] < M[b1, b2]:
                b1, b2 = k, l
    return best_k, b1, b2


@njit(**_JIT)
def elim_reward_clause(N, mu_hat, active, t, K, delta, removal):
    """Flag arms whose reward UCB falls below the leader's LCB."""
    khat = -1
    for k in range(K):
        if active[k] and (khat < 0 or mu_hat[k] > mu_hat[khat]):
            khat = k
    lcb = mu_hat[khat] - _radius(t, K, delta, N[khat])
    for k in range(K):
        if active[k] and k != khat:
            if mu_hat[k] + _radius(t, K, delta, N[k]) <= lcb:
                removal[k] = True


@njit(**_JIT)
def elim_duel_clause(M, nu_hat, active, t, K, delta, removal):
    """Flag arms confidently beaten by another candidate (duel UCB < 1/2)."""
    for k in range(K):
        if not active[k]:
            continue
        for l in range(K):
            if l == k or not active[l]:
                continue
            if nu_hat[k, l] + _radius(t, K, delta, M[k, l]) < 0.5:
                removal[k] = True
                break


@njit(**_JIT)
def _apply_removal(active, removal):
    # refuse a removal that would empty the candidate set
    survivors = 0
    for k in range(active.shape[0]):
        if active[k] and not removal[k]:
            survivors += 1
    if survivors == 0:
        return
    for k in range(active.shape[0]):
        if removal[k]:
            active[k] = False


@njit(**_JIT)
def elimfusion_post(N, mu_hat, M, nu_hat, active, t_next, K, delta):
    """Shared-set elimination: either clause removes an arm."""
    count = 0
    for k in range(K):
        if active[k]:
            count += 1
    if count <= 1:
        return
    removal = np.zeros(K, dtype=np.bool_)
    elim_duel_clause(M, nu_hat, active, t_next, K, delta, removal)
    elim_reward_clause(N, mu_hat, active, t_next, K, delta, removal)
    _apply_removal(active, removal)


@njit(**_JIT)
def elimnofusion_post(N, mu_hat, M, nu_hat, active_r, active_d, t_next, K, delta):
    """Independent per-channel elimination; no information crosses."""
    count_r = 0
    count_d = 0
    for k in range(K):
        if active_r[k]:
            count_r += 1
        if active_d[k]:
            count_d += 1
    if count_r > 1:
        removal = np.zeros(K, dtype=np.bool_)
        elim_reward_clause(N, mu_hat, active_r, t_next, K, delta, removal)
        _apply_removal(active_r, removal)
    if count_d > 1:
        removal = np.zeros(K, dtype=np.bool_)
        elim_duel_clause(M, nu_hat, active_d, t_next, K, delta, removal)
        _apply_removal(active_d, removal)


# ---------------------------------------------------------------------------
# minimum-empirical-divergence machinery (DecoFusion and MEDNoFusion)


@njit(**_JIT)
def info_update(N, mu_hat, M, nu_hat, ref_r, ref_d, IR, ID):
    """Recompute both information measures for every arm.

    Reward side: N_k * kl(mu_hat_k, max over ref_r).  Dueling side: sum of
    M_{k,l} * kl(nu_hat_{k,l}, 1/2) over reference arms that empirically
    beat k.
    """
    K = N.shape[0]
    ref_max = 0.0
    seen = False
    for k in range(K):
        if ref_r[k] and (not seen or mu_hat[k] > ref_max):
            ref_max = mu_hat[k]
            seen = True
    for k in range(K):
        IR[k] = N[k] * _kl(mu_hat[k], ref_max)
        total = 0.0
        for l in range(K):
            if l != k and ref_d[l] and M[k, l] >= 1 and nu_hat[k, l] < 0.5:
                total += M[k, l] * _kl(nu_hat[k, l], 0.5)
        ID[k] = total


@njit(**_JIT)
def deco_decompose(IR, ID, mu_hat, thr, KD, KR):
    """Rebuild the decomposition sets and the per-feedback leaders.

    Returns (khat_r, khat_d).  Ties in the argmin/argmax go to the
    smallest index.
    """
    K = IR.shape[0]
    khat_d = -1
    for k in range(K):
        KD[k] = IR[k] <= thr
        if KD[k] and (khat_d < 0 or ID[k] < ID[khat_d]):
            khat_d = k
    khat_r = -1
    for k in range(K):
        KR[k] = ID[k] - ID[khat_d] <= thr
        if KR[k] and (khat_r < 0 or mu_hat[k] > mu_hat[khat_r]):
            khat_r = k
    return khat_r, khat_d


@njit(**_JIT)
def rmed_comparison(nu_hat, cand, k_exp, khat_d):
    """Comparison arm for exploring k_exp by a duel, RMED1-style.

    Duel the divergence leader when it (empirically) beats k_exp or when
    nobody does; otherwise duel the candidate arm k_exp loses to most.
    """
    K = nu_hat.shape[0]
    leader_beats = False
    any_beats = False
    for k in range(K):
        if cand[k] and k != k_exp and nu_hat[k_exp, k] <= 0.5:
            any_beats = True
            if k == khat_d:
                leader_beats = True
    if leader_beats or not any_beats:
        return khat_d
    best = -1
    for k in range(K):
        if cand[k] and k != k_exp:
            if best < 0 or nu_hat[k_exp, k] < nu_hat[k_exp, best]:
                best = k
    return best


@njit(**_JIT)
def deco_decide(nu_hat, KD, E, khat_r, khat_d, u, beta):
    """Randomized decision: explore one feedback type, exploit the other.

    Returns (reward arm, duel first, duel second, explored arm or -1).
    An empty exploration set means exploiting both channels this round
    (explored arm -1); the set refills as arms re-qualify.
    """
    K = nu_hat.shape[0]
    k_exp = -1
    for k in range(K):
        if E[k]:
            k_exp = k
            break
    if k_exp < 0:
        return khat_r, khat_d, khat_d, -1
    if u > beta:
        # reward explore, dueling exploit
        return k_exp, khat_r, khat_r, k_exp
    # dueling explore, reward exploit
    k_duel = rmed_comparison(nu_hat, KD, k_exp, khat_d)
    return khat_d, k_exp, k_duel, k_exp


@njit(**_JIT)
def explore_list_update(E, B, score, thr, k_exp):
    """Consume the explored arm and refill the pending pool.

    Arms outside the active list whose score is within threshold join the
    auxiliary pool (set semantics, no duplicates); an exhausted list is
    renewed from the pool.  k_exp < 0 means no arm was explored this round
    (fallback): the refill and renewal still run so the list recovers.
    """
    K = E.shape[0]
    if k_exp >= 0:
        E[k_exp] = False
    for k in range(K):
        if not E[k] and score[k] <= thr:
            B[k] = True
    empty = True
    for k in range(K):
        if E[k]:
            empty = False
            break
    if empty:
        for k in range(K):
            E[k] = B[k]
            B[k] = False


@njit(**_JIT)
def deco_eset_update(E, B, KR, KD, IR, ID, khat_d, thr, k_exp):
    """Exploration set update for the decomposition policy.

    An arm re-qualifies if either feedback type still lacks information on
    it, judged within the matching decomposition set.  k_exp < 0 (fallback
    round) skips the removal but keeps the refill, so an exhausted state
    self-recovers as soon as any arm re-qualifies.
    """
    K = E.shape[0]
    if k_exp >= 0:
        E[k_exp] = False
    for k in range(K):
        if not E[k]:
            if (KR[k] and IR[k] <= thr) or (KD[k] and ID[k] - ID[khat_d] <= thr):
                B[k] = True
    empty = True
    for k in range(K):
        if E[k]:
            empty = False
            break
    if empty:
        for k in range(K):
            E[k] = B[k]
            B[k] = False


@njit(**_JIT)
def med_select_reward(N, IR, mu_hat, E):
    """Reward-channel arm: next listed arm, or the empirical best."""
    K = N.shape[0]
    for k in range(K):
        if E[k]:
            return k
    best = 0
    for k in range(1, K):
        if mu_hat[k] > mu_hat[best]:
            best = k
    return best


@njit(**_JIT)
def med_select_duel(ID, nu_hat, E):
    """Dueling-channel pair: explore the next listed arm against the
    RMED1 comparison arm, or self-duel the divergence leader."""
    K = ID.shape[0]
    khat_d = 0
    for k in range(1, K):
        if ID[k] < ID[khat_d]:
            khat_d = k
    k_exp = -1
    for k in range(K):
        if E[k]:
            k_exp = k
            break
    if k_exp < 0:
        return khat_d, khat_d, -1, khat_d
    full = np.ones(K, dtype=np.bool_)
    k_duel = rmed_comparison(nu_hat, full, k_exp, khat_d)
    return k_exp, k_duel, k_exp, khat_d


# ---------------------------------------------------------------------------
# full-horizon drivers


@njit(**_JIT)
def _sample(mu, nu, k, k1, k2, u_r, u_d):
    reward = 1.0 if u_r < mu[k] else 0.0
    winner = k1 if u_d < nu[k1, k2] else k2
    return reward, winner


@njit(**_JIT)
def run_elimfusion(mu, nu, gap_r, gap_d, delta, T, ur, ud, cp_t, out_r, out_d, N, mu_hat, M, nu_hat, active):
    K = mu.shape[0]
    W = K * (K - 1)
    cum_r = 0.0
    cum_d = 0.0
    ci = 0
    for t in range(1, T + 1):
        if t <= W:
            k, k1, k2 = warmup_slot(K, t - 1)
        else:
            k, k1, k2 = elim_select(N, M, active)
        reward, winner = _sample(mu, nu, k, k1, k2, ur[t - 1], ud[t - 1])
        update_stats(N, mu_hat, M, nu_hat, k, k1, k2, reward, winner)
        if t > W:
            elimfusion_post(N, mu_hat, M, nu_hat, active, t + 1, K, delta)
        cum_r += gap_r[k]
        cum_d += 0.5 * (gap_d[k1] + gap_d[k2])
        if ci < cp_t.shape[0] and t == cp_t[ci]:
            out_r[ci] = cum_r
            out_d[ci] = cum_d
            ci += 1


@njit(**_JIT)
def run_elimnofusion(mu, nu, gap_r, gap_d, delta, T, ur, ud, cp_t, out_r, out_d, N, mu_hat, M, nu_hat, active_r, active_d):
    K = mu.shape[0]
    W = K * (K - 1)
    cum_r = 0.0
    cum_d = 0.0
    ci = 0
    for t in range(1, T + 1):
        if t <= W:
            k, k1, k2 = warmup_slot(K, t - 1)
        else:
            k, _, _ = elim_select(N, M, active_r)
            _, k1, k2 = elim_select(N, M, active_d)
        reward, winner = _sample(mu, nu, k, k1, k2, ur[t - 1], ud[t - 1])
        update_stats(N, mu_hat, M, nu_hat, k, k1, k2, reward, winner)
        if t > W:
            elimnofusion_post(N, mu_hat, M, nu_hat, active_r, active_d, t + 1, K, delta)
        cum_r += gap_r[k]
        cum_d += 0.5 * (gap_d[k1] + gap_d[k2])
        if ci < cp_t.shape[0] and t == cp_t[ci]:
            out_r[ci] = cum_r
            out_d[ci] = cum_d
            ci += 1


@njit(**_JIT)
def run_decofusion(mu, nu, gap_r, gap_d, alpha, fK, T, ur, ud, up, cp_t, out_r, out_d, N, mu_hat, M, nu_hat, IR, ID, E, B, KD, KR):
    K = mu.shape[0]
    W = K * (K - 1)
    beta = alpha * alpha / (alpha * alpha + (1.0 - alpha) * (1.0 - alpha))
    cum_r = 0.0
    cum_d = 0.0
    ci = 0
    for t in range(1, T + 1):
        if t <= W:
            k, k1, k2 = warmup_slot(K, t - 1)
            reward, winner = _sample(mu, nu, k, k1, k2, ur[t - 1], ud[t - 1])
            update_stats(N, mu_hat, M, nu_hat, k, k1, k2, reward, winner)
        else:
            thr = np.log(t) + fK
            khat_r, khat_d = deco_decompose(IR, ID, mu_hat, thr, KD, KR)
            u = up[t - 1 - W]
            k, k1, k2, k_exp = deco_decide(nu_hat, KD, E, khat_r, khat_d, u, beta)
            reward, winner = _sample(mu, nu, k, k1, k2, ur[t - 1], ud[t - 1])
            deco_eset_update(E, B, KR, KD, IR, ID, khat_d, thr, k_exp)
            update_stats(N, mu_hat, M, nu_hat, k, k1, k2, reward, winner)
            info_update(N, mu_hat, M, nu_hat, KR, KD, IR, ID)
        cum_r += gap_r[k]
        cum_d += 0.5 * (gap_d[k1] + gap_d[k2])
        if ci < cp_t.shape[0] and t == cp_t[ci]:
            out_r[ci] = cum_r
            out_d[ci] = cum_d
            ci += 1


@njit(**_JIT)
def run_mednofusion(mu, nu, gap_r, gap_d, fK, T, ur, ud, cp_t, out_r, out_d, N, mu_hat, M, nu_hat, IR, ID, ER, BR, ED, BD):
    K = mu.shape[0]
    W = K * (K - 1)
    full = np.ones(K, dtype=np.bool_)
    score_d = np.zeros(K)
    cum_r = 0.0
    cum_d = 0.0
    ci = 0
    for t in range(1, T + 1):
        if t <= W:
            k, k1, k2 = warmup_slot(K, t - 1)
            reward, winner = _sample(mu, nu, k, k1, k2, ur[t - 1], ud[t - 1])
            update_stats(N, mu_hat, M, nu_hat, k, k1, k2, reward, winner)
        else:
            thr = np.log(t) + fK
            k = med_select_reward(N, IR, mu_hat, ER)
            k1, k2, k_exp_d, khat_d = med_select_duel(ID, nu_hat, ED)
            reward, winner = _sample(mu, nu, k, k1, k2, ur[t - 1], ud[t - 1])
            explore_list_update(ER, BR, IR, thr, k)
            for j in range(K):
                score_d[j] = ID[j] - ID[khat_d]
            explore_list_update(ED, BD, score_d, thr, k_exp_d)
            update_stats(N, mu_hat, M, nu_hat, k, k1, k2, reward, winner)
            info_update(N, mu_hat, M, nu_hat, full, full, IR, ID)
        cum_r += gap_r[k]
        cum_d += 0.5 * (gap_d[k1] + gap_d[k2])
        if ci < cp_t.shape[0] and t == cp_t[ci]:
            out_r[ci] = cum_r
            out_d[ci] = cum_d
            ci += 1
