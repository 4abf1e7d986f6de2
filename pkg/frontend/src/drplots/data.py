"""CSV loading and aggregation.

The renderer consumes exactly two documented schemas:

results files:  algorithm,rep,t,regret_total,regret_reward,regret_dueling
summary files:  algorithm,axis,axis_value,mean_final,std_final
                [,mean_final_reward,std_final_reward,
                  mean_final_dueling,std_final_dueling]

Aggregation happens here, separately from rendering, so tests can compare
plotted points against an independent recomputation of the same CSVs.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

RESULT_COLUMNS = ["algorithm", "rep", "t",
                  "regret_total", "regret_reward", "regret_dueling"]
SUMMARY_REQUIRED = ["algorithm", "axis", "axis_value", "mean_final", "std_final"]
SUMMARY_CHANNELS = ["mean_final_reward", "std_final_reward",
                    "mean_final_dueling", "std_final_dueling"]


class SchemaError(ValueError):
    """Raised when a CSV header does not match the documented schema."""


def _read_rows(path: str | Path, required: list[str]) -> list[dict]:
    path = Path(path)
    if not path.exists():
        raise SchemaError(f"{path}: file not found")
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in required if c not in header]
        if missing:
            raise SchemaError(
                f"{path}: missing columns {missing}; found {header}"
            )
        return list(reader)


@dataclass
class CurveSeries:
    """Per-checkpoint mean and standard deviation across repetitions."""

    t: np.ndarray
    mean: np.ndarray
    std: np.ndarray
    mean_reward: np.ndarray
    std_reward: np.ndarray
    mean_dueling: np.ndarray
    std_dueling: np.ndarray


def load_curves(paths: list[str | Path]) -> dict[str, CurveSeries]:
    """Aggregate results-file rows into per-algorithm curves.

    Rows from multiple files are pooled; (algorithm, rep, t) triples must
    form a full grid per algorithm so the mean is across all reps.
    """
    rows = []
    for path in paths:
        rows.extend(_read_rows(path, RESULT_COLUMNS))
    by_alg: dict[str, dict[int, dict[int, tuple]]] = {}
    for r in rows:
        vals = (float(r["regret_total"]), float(r["regret_reward"]),
                float(r["regret_dueling"]))
        by_alg.setdefault(r["algorithm"], {}).setdefault(
            int(r["rep"]), {})[int(r["t"])] = vals
    out = {}
    for alg, reps in by_alg.items():
        ts = sorted(next(iter(reps.values())))
        for rep, series in reps.items():
            if sorted(series) != ts:
                raise SchemaError(
                    f"algorithm {alg}: rep {rep} has a different checkpoint grid"
                )
        stacked = np.array([[reps[rep][t] for t in ts] for rep in sorted(reps)])
        out[alg] = CurveSeries(
            t=np.asarray(ts),
            mean=stacked[:, :, 0].mean(axis=0),
            std=stacked[:, :, 0].std(axis=0),
            mean_reward=stacked[:, :, 1].mean(axis=0),
            std_reward=stacked[:, :, 1].std(axis=0),
            mean_dueling=stacked[:, :, 2].mean(axis=0),
            std_dueling=stacked[:, :, 2].std(axis=0),
        )
    return out


@dataclass
class SweepSeries:
    """Final-regret summary along one sweep axis for one algorithm."""

    axis: str
    values: np.ndarray
    mean: np.ndarray
    std: np.ndarray
    mean_reward: np.ndarray | None = None
    std_reward: np.ndarray | None = None
    mean_dueling: np.ndarray | None = None
    std_dueling: np.ndarray | None = None

    @property
    def has_channels(self) -> bool:
        return self.mean_reward is not None


def load_summary(paths: list[str | Path]) -> dict[str, SweepSeries]:
    rows = []
    for path in paths:
        rows.extend(_read_rows(path, SUMMARY_REQUIRED))
    by_alg: dict[str, list[dict]] = {}
    for r in rows:
        by_alg.setdefault(r["algorithm"], []).append(r)
    out = {}
    for alg, rs in by_alg.items():
        rs = sorted(rs, key=lambda r: float(r["axis_value"]))
        axes = {r["axis"] for r in rs}
        if len(axes) != 1:
            raise SchemaError(f"algorithm {alg}: mixed sweep axes {sorted(axes)}")
        series = SweepSeries(
            axis=axes.pop(),
            values=np.array([float(r["axis_value"]) for r in rs]),
            mean=np.array([float(r["mean_final"]) for r in rs]),
            std=np.array([float(r["std_final"]) for r in rs]),
        )
        if all(c in rs[0] and rs[0][c] is not None for c in SUMMARY_CHANNELS):
            series.mean_reward = np.array([float(r["mean_final_reward"]) for r in rs])
            series.std_reward = np.array([float(r["std_final_reward"]) for r in rs])
            series.mean_dueling = np.array([float(r["mean_final_dueling"]) for r in rs])
            series.std_dueling = np.array([float(r["std_final_dueling"]) for r in rs])
        out[alg] = series
    return out
