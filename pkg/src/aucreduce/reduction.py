"""Item reduction by AUC ranking and the running-total AUC curve.

Items are ranked by their individual AUC against the outcome, best
first. The running total of the top ``k`` items is scored for every
``k`` and the reduced scale is the shortest prefix at which that curve
peaks.

A greedy forward variant is also available. It re-scores every
remaining item against the current running total at each step, so it
can skip items that are redundant with ones already chosen. It is an
extension and never the default.
"""

from __future__ import annotations

import csv
import io
import json
import warnings
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

import numpy as np

from aucreduce.data import Dataset
from aucreduce.roc import auc_rank

SCHEMA_VERSION = 1

Strategy = Literal["ranked-prefix", "greedy-forward"]
STRATEGIES: tuple[str, ...] = ("ranked-prefix", "greedy-forward")


class LowAucWarning(UserWarning):
    """An item scores below chance against the outcome."""


@dataclass(frozen=True)
class ItemAucTable:
    entries: tuple[tuple[str, float], ...]
    total_scale_auc: float

    @property
    def ordering(self) -> tuple[str, ...]:
        return tuple(item for item, _ in self.entries)

    @property
    def aucs(self) -> tuple[float, ...]:
        return tuple(auc for _, auc in self.entries)

    def auc_of(self, item_id: str) -> float:
        for item, auc in self.entries:
            if item == item_id:
                return auc
        raise KeyError(item_id)


@dataclass(frozen=True)
class CurveStep:
    item_id: str
    k: int
    auc: float


@dataclass(frozen=True)
class CumulativeAucCurve:
    steps: tuple[CurveStep, ...]

    @property
    def aucs(self) -> tuple[float, ...]:
        return tuple(s.auc for s in self.steps)

    @property
    def items(self) -> tuple[str, ...]:
        return tuple(s.item_id for s in self.steps)

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class ReducedScale:
    selected_item_ids: tuple[str, ...]
    reduced_auc: float
    full_auc: float
    n_items: int
    curve: CumulativeAucCurve
    strategy: str = "ranked-prefix"
    item_table: ItemAucTable | None = None

    @property
    def reduction_ratio(self) -> float:
        """Fraction of the original items retained."""
        return len(self.selected_item_ids) / self.n_items

    @property
    def auc_delta(self) -> float:
        return self.reduced_auc - self.full_auc


def rank_items(item_ids: Sequence[str], aucs: Sequence[float]) -> tuple[str, ...]:
    """Order items by descending AUC; equal AUCs keep input order."""
    if len(item_ids) != len(aucs):
        raise ValueError("item_ids and aucs differ in length")
    order = sorted(range(len(item_ids)), key=lambda j: (-aucs[j], j))
    return tuple(item_ids[j] for j in order)


def item_auc_table(dataset: Dataset) -> ItemAucTable:
    labels = dataset.labels
    aucs = [auc_rank(dataset.items[:, j], labels) for j in range(dataset.n_items)]
    low = [i for i, a in zip(dataset.item_ids, aucs) if a < 0.5]
    if low:
        warnings.warn(
            f"items with AUC below 0.5 (not flipped): {', '.join(low)}",
            LowAucWarning,
            stacklevel=2,
        )
    by_id = dict(zip(dataset.item_ids, aucs))
    ordering = rank_items(dataset.item_ids, aucs)
    return ItemAucTable(
        entries=tuple((i, by_id[i]) for i in ordering),
        total_scale_auc=auc_rank(dataset.items.sum(axis=1), labels),
    )


def _check_ordering(dataset: Dataset, ordering: Iterable[str]) -> list[int]:
    cols: list[int] = []
    seen: set[str] = set()
    for item in ordering:
        item = str(item)
        if item in seen:
            raise ValueError(f"item {item!r} appears twice in the ordering")
        seen.add(item)
        cols.append(dataset.index_of(item))
    if not cols:
        raise ValueError("ordering is empty")
    return cols


def cumulative_auc_curve(dataset: Dataset, ordering: Iterable[str]) -> CumulativeAucCurve:
    """AUC of the running item total after each item in ``ordering``."""
    cols = _check_ordering(dataset, ordering)
    running = np.zeros(dataset.n_respondents, dtype=np.int64)
    steps = []
    for k, j in enumerate(cols, start=1):
        running = running + dataset.items[:, j]
        steps.append(CurveStep(dataset.item_ids[j], k, auc_rank(running, dataset.labels)))
    return CumulativeAucCurve(tuple(steps))


def peak_prefix_length(aucs: Sequence[float]) -> int:
    """Length of the shortest prefix attaining the maximum curve value."""
    if len(aucs) == 0:
        raise ValueError("empty curve")
    best = max(aucs)
    return next(k for k, a in enumerate(aucs, start=1) if a == best)


def scale_from_curve(
    curve: CumulativeAucCurve,
    full_auc: float,
    n_items: int,
    strategy: str = "ranked-prefix",
    item_table: ItemAucTable | None = None,
) -> ReducedScale:
    """Cut a running-total curve at its first peak."""
    k = peak_prefix_length(curve.aucs)
    return ReducedScale(
        selected_item_ids=curve.items[:k],
        reduced_auc=curve.steps[k - 1].auc,
        full_auc=full_auc,
        n_items=n_items,
        curve=curve,
        strategy=strategy,
        item_table=item_table,
    )


def _greedy_forward(dataset: Dataset) -> CumulativeAucCurve:
    remaining = list(range(dataset.n_items))
    running = np.zeros(dataset.n_respondents, dtype=np.int64)
    current = -np.inf
    steps: list[CurveStep] = []
    while remaining:
        best_j, best_auc = -1, -np.inf
        for j in remaining:
            auc = auc_rank(running + dataset.items[:, j], dataset.labels)
            if auc > best_auc:
                best_j, best_auc = j, auc
        if best_auc <= current:
            break
        running = running + dataset.items[:, best_j]
        remaining.remove(best_j)
        current = best_auc
        steps.append(CurveStep(dataset.item_ids[best_j], len(steps) + 1, best_auc))
    return CumulativeAucCurve(tuple(steps))


def select_reduced_scale(
    dataset: Dataset, strategy: Strategy = "ranked-prefix"
) -> ReducedScale:
    table = item_auc_table(dataset)
    if strategy == "ranked-prefix":
        curve = cumulative_auc_curve(dataset, table.ordering)
    elif strategy == "greedy-forward":
        curve = _greedy_forward(dataset)
    else:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    return scale_from_curve(curve, table.total_scale_auc, dataset.n_items, strategy, table)


def format_percent(ratio: float) -> str:
    return f"{100 * ratio:.2f}%"


def reduction_report(scale: ReducedScale) -> dict:
    """Machine-readable summary of a reduction run."""
    table = scale.item_table
    report: dict = {"schema_version": SCHEMA_VERSION, "strategy": scale.strategy}
    if table is not None:
        report["items"] = list(table.ordering)
        report["item_auc"] = list(table.aucs)
    else:
        report["items"] = list(scale.curve.items)
        report["item_auc"] = []
    report["curve"] = [
        {"item": s.item_id, "k": s.k, "auc": s.auc} for s in scale.curve.steps
    ]
    report["selected"] = list(scale.selected_item_ids)
    report["n_items"] = scale.n_items
    report["n_selected"] = len(scale.selected_item_ids)
    report["full_auc"] = scale.full_auc
    report["reduced_auc"] = scale.reduced_auc
    report["auc_delta"] = scale.auc_delta
    report["reduction_ratio"] = scale.reduction_ratio
    report["reduction_percent"] = format_percent(scale.reduction_ratio)
    return report


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def item_table_text(
    table: ItemAucTable, delimiter: str = ",", descending: bool = False
) -> str:
    """Per-item AUC table; ascending by default like a printed ranking."""
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter=delimiter, lineterminator="\n")
    writer.writerow(["item", "auc"])
    entries = table.entries if descending else tuple(reversed(table.entries))
    for item, auc in entries:
        writer.writerow([item, repr(auc)])
    return buf.getvalue()


def curve_table_text(curve: CumulativeAucCurve, delimiter: str = ",") -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter=delimiter, lineterminator="\n")
    writer.writerow(["k", "item", "auc"])
    for s in curve.steps:
        writer.writerow([s.k, s.item_id, repr(s.auc)])
    return buf.getvalue()
