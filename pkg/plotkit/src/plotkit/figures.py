"""The three figure kinds rendered from a harness results table.

improvement_bars: per-benchmark TDG/INJEQT* ratio bars plus a mean bar.
r_sweep_violin: distribution of a metric across pipeline counts.
r_star_violin: per-benchmark distribution of the per-trial optimal R.
"""
from __future__ import annotations

from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
# deterministic SVG element ids so re-rendering is byte-identical
matplotlib.rcParams["svg.hashsalt"] = "plotkit"

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .data import (METRICS, Row, benchmarks, best_r, by_policy, load_results,
                   mean_by_r)
from .errors import EmptyInput  # noqa: F401 (re-exported convenience)

FIGURE_KINDS = ("improvement_bars", "r_sweep_violin", "r_star_violin")

RATIO_NOTE = ">1 = INJEQT better"


@dataclass(frozen=True)
class FigureSpec:
    kind: str
    metric: str
    input_path: str
    output_path: str
    log_scale: bool = True

    def __post_init__(self):
        if self.kind not in FIGURE_KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}")
        if self.metric not in METRICS:
            raise ValueError(f"metric must be one of {METRICS}")


def _improvements(rows: list[Row], metric: str) -> tuple[list[str], list[float]]:
    names, ratios = [], []
    for bench in benchmarks(rows):
        bench_rows = [r for r in rows if r.benchmark == bench]
        baseline = by_policy(bench_rows, "tdg")
        prefetched = by_policy(bench_rows, "injeqt")
        base = float(np.mean([r.metric(metric) for r in baseline]))
        star = min(mean_by_r(prefetched, metric).values())
        names.append(bench)
        ratios.append(base / star if star else float("inf"))
    return names, ratios


def _render_improvement_bars(ax, rows: list[Row], spec: FigureSpec) -> None:
    names, ratios = _improvements(rows, spec.metric)
    names.append("mean")
    ratios.append(float(np.mean(ratios)))
    colors = ["tab:blue"] * (len(names) - 1) + ["tab:orange"]
    ax.bar(names, ratios, color=colors)
    ax.axhline(1.0, color="gray", linewidth=0.8, linestyle="--")
    ax.set_ylabel(f"{spec.metric} improvement (TDG / INJEQT*)")
    ax.set_title(f"INJEQT* over TDG, {spec.metric} ({RATIO_NOTE})")
    if spec.log_scale:
        ax.set_yscale("log")
    ax.tick_params(axis="x", rotation=30)


def _render_r_sweep_violin(ax, rows: list[Row], spec: FigureSpec) -> None:
    prefetched = by_policy(rows, "injeqt")
    r_values = sorted({r.r for r in prefetched})
    data = [[r.metric(spec.metric) for r in prefetched if r.r == rv]
            for rv in r_values]
    ax.violinplot(data, positions=range(len(r_values)), showmeans=True)
    ax.set_xticks(range(len(r_values)), [str(rv) for rv in r_values])
    ax.set_xlabel("pipeline count R")
    ax.set_ylabel(spec.metric)
    ax.set_title(f"INJEQT {spec.metric} across R")
    if spec.log_scale:
        ax.set_yscale("log")


def _render_r_star_violin(ax, rows: list[Row], spec: FigureSpec) -> None:
    prefetched = by_policy(rows, "injeqt")
    names = benchmarks(prefetched)
    data = []
    for bench in names:
        bench_rows = [r for r in prefetched if r.benchmark == bench]
        stars = []
        for seed in sorted({r.seed for r in bench_rows}):
            trial = [r for r in bench_rows if r.seed == seed]
            stars.append(best_r(trial, spec.metric))
        data.append(stars)
    ax.violinplot(data, positions=range(len(names)), showmeans=True)
    ax.set_xticks(range(len(names)), names)
    ax.set_ylabel(f"optimal R by {spec.metric}")
    ax.set_title(f"INJEQT optimal pipeline count, {spec.metric}")
    ax.tick_params(axis="x", rotation=30)


_RENDERERS = {
    "improvement_bars": _render_improvement_bars,
    "r_sweep_violin": _render_r_sweep_violin,
    "r_star_violin": _render_r_star_violin,
}


def render(spec: FigureSpec):
    """Render one figure to spec.output_path and return the Figure."""
    rows = load_results(spec.input_path)
    fig, ax = plt.subplots(figsize=(7, 4.2), constrained_layout=True)
    try:
        _RENDERERS[spec.kind](ax, rows, spec)
        # a pinned metadata block keeps SVG output byte-stable across runs
        metadata = {"Date": None} if spec.output_path.endswith(".svg") else None
        fig.savefig(spec.output_path, metadata=metadata)
    finally:
        plt.close(fig)
    return fig
