"""Figure rendering.

Four kinds: ``curves`` (regret vs t per algorithm), ``decomposed-curves``
(reward/dueling regret panels), ``gap-sweep`` (final regret vs gap), and
``alpha-sweep`` (aggregated/reward/dueling final regret vs alpha).

Output is a pure function of the CSV content and the request: figures are
rendered with the Agg backend and saved without timestamp metadata, so
identical inputs produce identical bytes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "drplots"  # deterministic SVG ids

import matplotlib.pyplot as plt  # noqa: E402

from .data import CurveSeries, SweepSeries, load_curves, load_summary  # noqa: E402

KINDS = ("curves", "gap-sweep", "alpha-sweep", "decomposed-curves")

# fixed ordering keeps colors/legend stable across runs
_ALG_ORDER = ["ElimFusion", "ElimNoFusion", "DecoFusion", "MEDNoFusion"]


@dataclass
class PlotRequest:
    csv_paths: list
    kind: str
    out: str
    band: float = 1.0
    log_t: bool = False

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.band < 0:
            raise ValueError(f"band must be >= 0, got {self.band}")
        missing = [p for p in self.csv_paths if not Path(p).exists()]
        if missing:
            raise ValueError(f"csv files not found: {missing}")


def _ordered(algs) -> list[str]:
    known = [a for a in _ALG_ORDER if a in algs]
    return known + sorted(a for a in algs if a not in _ALG_ORDER)


def _band(ax, x, mean, std, k, color):
    if k > 0:
        ax.fill_between(x, mean - k * std, mean + k * std,
                        alpha=0.2, color=color, linewidth=0)


def _save(fig, out: str) -> None:
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    # strip date metadata so output depends only on the data
    if path.suffix.lower() == ".svg":
        fig.savefig(path, metadata={"Date": None})
    else:
        fig.savefig(path)
    plt.close(fig)


def _render_curves(curves: dict[str, CurveSeries], request: PlotRequest,
                   decomposed: bool):
    panels = (
        [("mean_reward", "std_reward", "cumulative reward regret"),
         ("mean_dueling", "std_dueling", "cumulative dueling regret")]
        if decomposed
        else [("mean", "std", "cumulative regret")]
    )
    fig, axes = plt.subplots(1, len(panels),
                             figsize=(6 * len(panels), 4.2), squeeze=False)
    for ax, (mean_attr, std_attr, ylabel) in zip(axes[0], panels):
        for alg in _ordered(curves):
            series = curves[alg]
            line, = ax.plot(series.t, getattr(series, mean_attr), label=alg)
            _band(ax, series.t, getattr(series, mean_attr),
                  getattr(series, std_attr), request.band, line.get_color())
        if request.log_t:
            ax.set_xscale("log")
        ax.set_xlabel("t")
        ax.set_ylabel(ylabel)
        ax.legend()
    fig.tight_layout()
    return fig


def _render_gap_sweep(summary: dict[str, SweepSeries], request: PlotRequest):
    fig, ax = plt.subplots(figsize=(6, 4.2))
    axis_names = set()
    for alg in _ordered(summary):
        series = summary[alg]
        axis_names.add(series.axis)
        line, = ax.plot(series.values, series.mean, marker="o", label=alg)
        _band(ax, series.values, series.mean, series.std,
              request.band, line.get_color())
    ax.set_xlabel(" / ".join(sorted(axis_names)))
    ax.set_ylabel("final regret")
    ax.legend()
    fig.tight_layout()
    return fig


def _render_alpha_sweep(summary: dict[str, SweepSeries], request: PlotRequest):
    fig, ax = plt.subplots(figsize=(6, 4.2))
    for alg in _ordered(summary):
        series = summary[alg]
        if not series.has_channels:
            raise ValueError(
                "alpha-sweep needs the per-channel summary columns "
                "(mean_final_reward, ..., std_final_dueling)"
            )
        for mean, std, label in (
            (series.mean, series.std, f"{alg} aggregated"),
            (series.mean_reward, series.std_reward, f"{alg} reward"),
            (series.mean_dueling, series.std_dueling, f"{alg} dueling"),
        ):
            line, = ax.plot(series.values, mean, marker="o", label=label)
            _band(ax, series.values, mean, std, request.band, line.get_color())
    ax.set_xlabel("alpha")
    ax.set_ylabel("final regret")
    ax.legend()
    fig.tight_layout()
    return fig


def render(request: PlotRequest) -> str:
    """Render the requested figure and return the output path."""
    request.validate()
    if request.kind in ("curves", "decomposed-curves"):
        curves = load_curves(request.csv_paths)
        fig = _render_curves(curves, request,
                             decomposed=request.kind == "decomposed-curves")
    else:
        summary = load_summary(request.csv_paths)
        if request.kind == "gap-sweep":
            fig = _render_gap_sweep(summary, request)
        else:
            fig = _render_alpha_sweep(summary, request)
    _save(fig, request.out)
    return request.out
