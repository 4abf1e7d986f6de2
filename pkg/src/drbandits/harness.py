"""Experiment orchestration: seeded repetitions, checkpointed regret
recording, CSV emission, and parameter sweeps.

Repetition r of an experiment draws from three independent sub-streams
(reward, duel, policy) derived from ``(base_seed, r)``, so results do not
depend on how repetitions are scheduled; parallel and serial execution
produce byte-identical output.  Worker parallelism is capped by the
``DRBANDITS_MAX_WORKERS`` environment variable.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

from . import _kernels as k_
from .core import (
    CHANNEL_DUEL,
    CHANNEL_POLICY,
    CHANNEL_REWARD,
    Action,
    BanditInstance,
    RngStream,
    sample_round,
)
from .instances import DUELING_GAP_GRID, REWARD_GAP_GRID, resolve_instance
from .policies import POLICY_KINDS, PolicyParams

__all__ = [
    "ExperimentConfig",
    "ExperimentResult",
    "SweepResult",
    "run_experiment",
    "sweep",
    "simulate",
    "load_config",
    "checkpoint_times",
    "RESULT_COLUMNS",
    "SUMMARY_COLUMNS",
]

RESULT_COLUMNS = ["algorithm", "rep", "t", "regret_total", "regret_reward", "regret_dueling"]
SUMMARY_COLUMNS = [
    "algorithm", "axis", "axis_value", "mean_final", "std_final",
    "mean_final_reward", "std_final_reward", "mean_final_dueling", "std_final_dueling",
]

SWEEP_AXES = ("alpha-grid", "reward-gap-grid", "dueling-gap-grid")


@dataclass
class ExperimentConfig:
    """Everything needed to reproduce one experiment or sweep."""

    instance: str
    algorithms: list = field(default_factory=lambda: list(POLICY_KINDS))
    T: int = 200_000
    alpha: float = 0.5
    reps: int = 20
    base_seed: int = 20_250_101
    checkpoint_stride: int = 1000
    params: PolicyParams = field(default_factory=PolicyParams)
    output: str | None = None
    instance_delta: float | None = None
    axis: str | None = None
    grid: list[float] | None = None

    def __post_init__(self):
        self.params = dataclasses.replace(self.params, alpha=self.alpha)

    def validate(self, inst: BanditInstance) -> list[str]:
        problems = []
        if self.reps < 1:
            problems.append(f"reps={self.reps} violates reps >= 1")
        if self.checkpoint_stride < 1:
            problems.append(f"checkpoint_stride={self.checkpoint_stride} violates checkpoint_stride >= 1")
        w = inst.K * (inst.K - 1)
        if self.T < w:
            problems.append(f"T={self.T} violates T >= K(K-1) = {w}")
        if not 0.0 <= self.alpha <= 1.0:
            problems.append(f"alpha={self.alpha} outside [0,1]")
        if self.axis is not None and self.axis not in SWEEP_AXES:
            problems.append(f"axis={self.axis!r} not one of {SWEEP_AXES}")
        return problems


def load_config(path: str | Path) -> ExperimentConfig:
    """Read a YAML/JSON config file into an ExperimentConfig."""
    data = yaml.safe_load(Path(path).read_text())
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a mapping")
    pdata = data.pop("params", {}) or {}
    f_of_K = tuple(pdata.get("f_of_K", (0.05, 1.01)))
    params = PolicyParams(delta_rule=pdata.get("delta_rule", "1/T"), f_of_K=f_of_K)
    known = {f.name for f in dataclasses.fields(ExperimentConfig)}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"{path}: unknown config fields {sorted(unknown)}")
    return ExperimentConfig(params=params, **data)


def checkpoint_times(T: int, stride: int) -> np.ndarray:
    ts = list(range(stride, T + 1, stride))
    if not ts or ts[-1] != T:
        ts.append(T)
    return np.asarray(ts, dtype=np.int64)


@dataclass
class RepResult:
    """Checkpointed regret components of one (algorithm, repetition) run."""

    cp_t: np.ndarray
    cum_reward: np.ndarray
    cum_dueling: np.ndarray
    final_state: dict = field(default_factory=dict)

    def total(self, alpha: float) -> np.ndarray:
        return alpha * self.cum_reward + (1.0 - alpha) * self.cum_dueling


def _alg_name(alg) -> str:
    return alg if isinstance(alg, str) else getattr(alg, "__name__", str(alg))


def _run_rep(alg, inst: BanditInstance, params: PolicyParams, T: int,
             cp_t: np.ndarray, base_seed: int, rep: int) -> RepResult:
    K = inst.K
    W = K * (K - 1)
    ur = RngStream(base_seed, rep, CHANNEL_REWARD).uniform(T)
    ud = RngStream(base_seed, rep, CHANNEL_DUEL).uniform(T)
    n_cp = len(cp_t)
    out_r = np.zeros(n_cp)
    out_d = np.zeros(n_cp)
    mu, nu = inst.mu, inst.nu
    gr, gd = inst.reward_gaps, inst.dueling_gaps

    N = np.zeros(K, dtype=np.int64)
    mu_hat = np.zeros(K)
    M = np.zeros((K, K), dtype=np.int64)
    nu_hat = np.zeros((K, K))
    np.fill_diagonal(nu_hat, 0.5)
    state: dict = {"N": N, "M": M}

    if alg == "ElimFusion":
        delta = params.resolve_delta(K, T)
        active = np.ones(K, dtype=np.bool_)
        k_.run_elimfusion(mu, nu, gr, gd, delta, T, ur, ud, cp_t, out_r, out_d,
                          N, mu_hat, M, nu_hat, active)
        state["candidate"] = active
    elif alg == "ElimNoFusion":
        delta = params.resolve_delta(K, T)
        active_r = np.ones(K, dtype=np.bool_)
        active_d = np.ones(K, dtype=np.bool_)
        k_.run_elimnofusion(mu, nu, gr, gd, delta, T, ur, ud, cp_t, out_r, out_d,
                            N, mu_hat, M, nu_hat, active_r, active_d)
        state["candidate_r"] = active_r
        state["candidate_d"] = active_d
    elif alg == "DecoFusion":
        up = RngStream(base_seed, rep, CHANNEL_POLICY).uniform(max(T - W, 0))
        IR = np.zeros(K)
        ID = np.zeros(K)
        E = np.ones(K, dtype=np.bool_)
        B = np.zeros(K, dtype=np.bool_)
        KD = np.ones(K, dtype=np.bool_)
        KR = np.ones(K, dtype=np.bool_)
        k_.run_decofusion(mu, nu, gr, gd, params.alpha, params.f_value(K), T,
                          ur, ud, up, cp_t, out_r, out_d,
                          N, mu_hat, M, nu_hat, IR, ID, E, B, KD, KR)
    elif alg == "MEDNoFusion":
        IR = np.zeros(K)
        ID = np.zeros(K)
        ER = np.ones(K, dtype=np.bool_)
        BR = np.zeros(K, dtype=np.bool_)
        ED = np.ones(K, dtype=np.bool_)
        BD = np.zeros(K, dtype=np.bool_)
        k_.run_mednofusion(mu, nu, gr, gd, params.f_value(K), T, ur, ud, cp_t,
                           out_r, out_d, N, mu_hat, M, nu_hat, IR, ID, ER, BR, ED, BD)
    else:
        # custom policy factory: generic stepwise loop
        policy = alg(inst.K, params, T, rng=RngStream(base_seed, rep, CHANNEL_POLICY).generator)
        return simulate(policy, inst, T, cp_t,
                        reward_rng=_pregen(ur), duel_rng=_pregen(ud))
    return RepResult(cp_t=cp_t, cum_reward=out_r, cum_dueling=out_d, final_state=state)


class _pregen:
    """Generator facade over a pre-drawn uniform array (keeps the fast and
    stepwise paths on identical streams)."""

    def __init__(self, values):
        self._values = values
        self._i = 0

    def random(self):
        v = self._values[self._i]
        self._i += 1
        return v


def simulate(policy, inst: BanditInstance, T: int, cp_t: np.ndarray,
             reward_rng, duel_rng) -> RepResult:
    """Round-by-round loop over the stepwise policy interface.

    Slower than the compiled drivers but works with any policy object;
    both paths consume the same random streams, so a stepwise run of a
    built-in policy reproduces the driver's trajectory exactly.
    """
    cum_r = 0.0
    cum_d = 0.0
    n_cp = len(cp_t)
    out_r = np.zeros(n_cp)
    out_d = np.zeros(n_cp)
    ci = 0
    gr, gd = inst.reward_gaps, inst.dueling_gaps
    for t in range(1, T + 1):
        action = policy.select_action(t)
        outcome = sample_round(inst, reward_rng, duel_rng, action)
        policy.observe(t, outcome)
        cum_r += gr[action.reward_arm - 1]
        cum_d += 0.5 * (gd[action.duel_pair[0] - 1] + gd[action.duel_pair[1] - 1])
        if ci < n_cp and t == cp_t[ci]:
            out_r[ci] = cum_r
            out_d[ci] = cum_d
            ci += 1
    state = {"N": policy.stats.N, "M": policy.stats.M} if hasattr(policy, "stats") else {}
    return RepResult(cp_t=cp_t, cum_reward=out_r, cum_dueling=out_d, final_state=state)


@dataclass
class ExperimentResult:
    """All repetitions of all algorithms for one configuration."""

    config: ExperimentConfig
    cp_t: np.ndarray
    runs: dict[str, list[RepResult]]

    def final_totals(self, algorithm: str) -> np.ndarray:
        alpha = self.config.alpha
        return np.array([r.total(alpha)[-1] for r in self.runs[algorithm]])

    def mean_final(self, algorithm: str) -> float:
        return float(np.mean(self.final_totals(algorithm)))

    def aggregate(self, algorithm: str) -> dict[str, np.ndarray]:
        """Per-checkpoint mean and standard deviation across repetitions."""
        alpha = self.config.alpha
        totals = np.stack([r.total(alpha) for r in self.runs[algorithm]])
        return {
            "t": self.cp_t,
            "mean": totals.mean(axis=0),
            "std": totals.std(axis=0),
        }

    def rows(self):
        alpha = self.config.alpha
        for alg in self.runs:
            for rep, r in enumerate(self.runs[alg]):
                tot = r.total(alpha)
                for i, t in enumerate(r.cp_t):
                    yield [alg, rep, int(t), tot[i], r.cum_reward[i], r.cum_dueling[i]]


def _max_workers(reps: int) -> int:
    cap = os.environ.get("DRBANDITS_MAX_WORKERS")
    if cap is not None:
        return max(1, min(int(cap), reps))
    return max(1, min(os.cpu_count() or 1, reps))


def run_experiment(config: ExperimentConfig, inst: BanditInstance | None = None,
                   write: bool = True) -> ExperimentResult:
    """Run every (algorithm, repetition) pair and optionally emit CSVs.

    Repetitions execute on a thread pool (the compiled drivers release the
    GIL); results are merged in repetition order, so scheduling never
    changes the output.
    """
    if inst is None:
        inst = resolve_instance(config.instance, config.instance_delta)
    problems = config.validate(inst)
    if problems:
        raise ValueError("invalid experiment config: " + "; ".join(problems))
    cp_t = checkpoint_times(config.T, config.checkpoint_stride)
    runs: dict[str, list[RepResult]] = {}
    with ThreadPoolExecutor(max_workers=_max_workers(config.reps)) as pool:
        for alg in config.algorithms:
            futures = [
                pool.submit(_run_rep, alg, inst, config.params, config.T,
                            cp_t, config.base_seed, rep)
                for rep in range(config.reps)
            ]
            runs[_alg_name(alg)] = [f.result() for f in futures]
    result = ExperimentResult(config=config, cp_t=cp_t, runs=runs)
    if write and config.output:
        out_dir = Path(config.output)
        out_dir.mkdir(parents=True, exist_ok=True)
        write_results_csv(out_dir / "results.csv", result)
        _write_metadata(out_dir / "results.meta.json", config)
    return result


def write_results_csv(path: str | Path, result: ExperimentResult) -> None:
    with open(path, "w", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RESULT_COLUMNS)
        for alg, rep, t, tot, rew, duel in result.rows():
            writer.writerow([alg, rep, t, repr(float(tot)), repr(float(rew)), repr(float(duel))])


def _write_metadata(path: Path, config: ExperimentConfig, extra: dict | None = None) -> None:
    from . import __version__

    meta = {
        "instance": config.instance,
        "instance_delta": config.instance_delta,
        "algorithms": [_alg_name(a) for a in config.algorithms],
        "T": config.T,
        "alpha": config.alpha,
        "reps": config.reps,
        "base_seed": config.base_seed,
        "checkpoint_stride": config.checkpoint_stride,
        "delta_rule": str(config.params.delta_rule),
        "f_of_K": list(config.params.f_of_K),
        "build": f"drbandits {__version__}",
    }
    if extra:
        meta.update(extra)
    path.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")


@dataclass
class SweepResult:
    """One full experiment per grid point, plus final-regret summaries."""

    axis: str
    grid: list[float]
    results: dict[float, ExperimentResult]

    def summary_rows(self):
        for value in self.grid:
            res = self.results[value]
            alpha = res.config.alpha
            for alg in res.runs:
                finals_r = np.array([r.cum_reward[-1] for r in res.runs[alg]])
                finals_d = np.array([r.cum_dueling[-1] for r in res.runs[alg]])
                finals = alpha * finals_r + (1.0 - alpha) * finals_d
                yield [
                    alg, self.axis, value,
                    float(finals.mean()), float(finals.std()),
                    float(finals_r.mean()), float(finals_r.std()),
                    float(finals_d.mean()), float(finals_d.std()),
                ]


def sweep(config: ExperimentConfig, inst: BanditInstance | None = None,
          write: bool = True) -> SweepResult:
    """Run one experiment per grid point along the configured axis."""
    if config.axis not in SWEEP_AXES:
        raise ValueError(f"sweep requires axis in {SWEEP_AXES}, got {config.axis!r}")
    grid = list(config.grid) if config.grid else _default_grid(config.axis)
    if not grid:
        raise ValueError("sweep grid is empty")
    results = {}
    for value in grid:
        point = dataclasses.replace(config, output=None, grid=None)
        if config.axis == "alpha-grid":
            point = dataclasses.replace(point, alpha=float(value))
            point_inst = inst
        elif config.axis == "reward-gap-grid":
            point = dataclasses.replace(point, instance="reward-gap", instance_delta=float(value))
            point_inst = None
        else:
            point = dataclasses.replace(point, instance="dueling-gap", instance_delta=float(value))
            point_inst = None
        results[value] = run_experiment(point, inst=point_inst, write=False)
    out = SweepResult(axis=config.axis, grid=grid, results=results)
    if write and config.output:
        out_dir = Path(config.output)
        out_dir.mkdir(parents=True, exist_ok=True)
        write_summary_csv(out_dir / "summary.csv", out)
        for value in grid:
            write_results_csv(out_dir / f"results_{config.axis}_{value}.csv", results[value])
        _write_metadata(out_dir / "summary.meta.json", config, {"axis": config.axis, "grid": grid})
    return out


def _default_grid(axis: str) -> list[float]:
    if axis == "alpha-grid":
        return [round(0.1 * i, 1) for i in range(11)]
    if axis == "reward-gap-grid":
        return list(REWARD_GAP_GRID)
    return list(DUELING_GAP_GRID)


def write_summary_csv(path: str | Path, sweep_result: SweepResult) -> None:
    with open(path, "w", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SUMMARY_COLUMNS)
        for row in sweep_result.summary_rows():
            writer.writerow([row[0], row[1], repr(float(row[2]))] + [repr(v) for v in row[3:]])
