"""Loading and grouping of harness results.csv files.

The expected schema is the simulation harness's trial table:
benchmark,policy,factory,tech,R,seed,total_error,wall_clock,phys_qubits,spacetime
"""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import EmptyInput, SchemaError

METRICS = ("total_error", "wall_clock", "phys_qubits", "spacetime")
REQUIRED_COLUMNS = ("benchmark", "policy", "factory", "tech", "R",
                    "seed") + METRICS


@dataclass(frozen=True)
class Row:
    benchmark: str
    policy: str
    r: int
    seed: int
    values: tuple[float, float, float, float]  # metric order as in METRICS

    def metric(self, name: str) -> float:
        return self.values[METRICS.index(name)]


def load_results(path: str) -> list[Row]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in REQUIRED_COLUMNS if c not in header]
        if missing:
            raise SchemaError(f"missing columns: {', '.join(missing)}")
        rows = []
        for rec in reader:
            try:
                rows.append(Row(
                    benchmark=rec["benchmark"],
                    policy=rec["policy"],
                    r=int(rec["R"]),
                    seed=int(rec["seed"]),
                    values=tuple(float(rec[m]) for m in METRICS),
                ))
            except (TypeError, ValueError) as exc:
                raise SchemaError(f"bad row {reader.line_num}: {exc}") from exc
    if not rows:
        raise EmptyInput(f"{path}: no data rows")
    return rows


def by_policy(rows: list[Row], policy: str) -> list[Row]:
    out = [r for r in rows if r.policy == policy]
    if not out:
        raise EmptyInput(f"no rows for policy {policy!r}")
    return out


def benchmarks(rows: list[Row]) -> list[str]:
    seen: dict[str, None] = {}
    for r in rows:
        seen.setdefault(r.benchmark, None)
    return list(seen)


def mean_by_r(rows: list[Row], metric: str) -> dict[int, float]:
    """Mean metric value per pipeline count R."""
    groups: dict[int, list[float]] = {}
    for r in rows:
        groups.setdefault(r.r, []).append(r.metric(metric))
    return {k: float(np.mean(v)) for k, v in sorted(groups.items())}


def best_r(rows: list[Row], metric: str) -> int:
    """R with the lowest mean metric; ties resolve to the smaller R."""
    means = mean_by_r(rows, metric)
    return min(means, key=lambda r: (means[r], r))
