"""Construct reliability and variance extracted from factor loadings.

Nothing is fitted here. Loadings come from an external CFA run.

    CR = (sum lambda)^2 / ((sum lambda)^2 + sum delta)
    VE = sum(lambda^2) / n

When error variances are not supplied they default to ``1 - lambda^2``,
the standardized-solution convention.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

DEFAULT_CR_THRESHOLD = 0.7


class LoadingError(ValueError):
    pass


@dataclass(frozen=True)
class LoadingSet:
    item_ids: tuple[str, ...]
    loadings: tuple[float, ...]
    error_variances: tuple[float, ...] | None = None
    standardized: bool = True

    def __post_init__(self) -> None:
        ids = tuple(str(i) for i in self.item_ids)
        lam = tuple(float(x) for x in self.loadings)
        if len(ids) != len(lam):
            raise LoadingError("item_ids and loadings differ in length")
        if len(set(ids)) != len(ids):
            raise LoadingError("item ids must be unique")
        if not all(np.isfinite(lam)):
            raise LoadingError("loadings must be finite")
        if self.standardized and any(abs(x) > 1 for x in lam):
            raise LoadingError("standardized loadings must satisfy |lambda| <= 1")
        object.__setattr__(self, "item_ids", ids)
        object.__setattr__(self, "loadings", lam)
        if self.error_variances is not None:
            delta = tuple(float(x) for x in self.error_variances)
            if len(delta) != len(lam):
                raise LoadingError("error_variances and loadings differ in length")
            if any(not np.isfinite(d) or d < 0 for d in delta):
                raise LoadingError("error variances must be finite and non-negative")
            object.__setattr__(self, "error_variances", delta)

    @classmethod
    def from_mapping(
        cls, loadings: dict[str, float], error_variances: dict[str, float] | None = None
    ) -> LoadingSet:
        ids = tuple(loadings)
        deltas = None
        if error_variances is not None:
            deltas = tuple(error_variances[i] for i in ids)
        return cls(ids, tuple(loadings.values()), deltas)

    def __len__(self) -> int:
        return len(self.item_ids)

    def deltas(self) -> np.ndarray:
        if self.error_variances is not None:
            return np.array(self.error_variances)
        lam = np.array(self.loadings)
        return 1.0 - lam**2

    def subset(self, item_ids) -> LoadingSet:
        idx = [self.item_ids.index(str(i)) for i in item_ids]
        deltas = None
        if self.error_variances is not None:
            deltas = tuple(self.error_variances[j] for j in idx)
        return LoadingSet(
            tuple(self.item_ids[j] for j in idx),
            tuple(self.loadings[j] for j in idx),
            deltas,
            self.standardized,
        )


def construct_reliability(loadings: LoadingSet) -> float:
    if len(loadings) == 0:
        raise LoadingError("construct reliability needs at least one loading")
    delta = loadings.deltas()
    if np.any(delta < 0):
        raise LoadingError("negative error variance")
    s2 = float(np.sum(loadings.loadings)) ** 2
    denom = s2 + float(delta.sum())
    if denom == 0:
        raise LoadingError("construct reliability undefined: zero loadings and zero error")
    return s2 / denom


def variance_extracted(loadings: LoadingSet) -> float:
    if len(loadings) == 0:
        raise LoadingError("variance extracted needs at least one loading")
    lam = np.array(loadings.loadings)
    return float(np.sum(lam**2)) / lam.size


@dataclass(frozen=True)
class ReliabilityComparison:
    full_cr: float
    full_ve: float
    reduced_cr: float
    reduced_ve: float
    threshold: float = DEFAULT_CR_THRESHOLD

    @property
    def cr_delta(self) -> float:
        return self.reduced_cr - self.full_cr

    @property
    def ve_delta(self) -> float:
        return self.reduced_ve - self.full_ve

    @property
    def acceptable(self) -> bool:
        """Reduced scale CR meets the threshold."""
        return self.reduced_cr >= self.threshold

    @property
    def reduced_ve_improved(self) -> bool:
        return self.reduced_ve > self.full_ve

    def to_dict(self) -> dict:
        return {
            "full": {"cr": self.full_cr, "ve": self.full_ve},
            "reduced": {"cr": self.reduced_cr, "ve": self.reduced_ve},
            "cr_delta": self.cr_delta,
            "ve_delta": self.ve_delta,
            "cr_threshold": self.threshold,
            "acceptable": self.acceptable,
            "reduced_ve_gt_full_ve": self.reduced_ve_improved,
        }


def reliability_comparison(
    full: LoadingSet, reduced: LoadingSet, threshold: float = DEFAULT_CR_THRESHOLD
) -> ReliabilityComparison:
    extra = sorted(set(reduced.item_ids) - set(full.item_ids))
    if extra:
        raise LoadingError(f"reduced items not in the full set: {', '.join(extra)}")
    return ReliabilityComparison(
        full_cr=construct_reliability(full),
        full_ve=variance_extracted(full),
        reduced_cr=construct_reliability(reduced),
        reduced_ve=variance_extracted(reduced),
        threshold=threshold,
    )


def _float(cell: str, where: str) -> float:
    try:
        return float(cell)
    except ValueError:
        raise LoadingError(f"{where}: {cell!r} is not a number") from None


def parse_loadings_csv(text: str, delimiter: str = ",") -> LoadingSet:
    """Rows of ``item_id, lambda[, delta]``; a header row is skipped."""
    ids: list[str] = []
    lam: list[float] = []
    delta: list[float] = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text), delimiter=delimiter), 1):
        cells = [c.strip() for c in row]
        if not any(cells):
            continue
        if len(cells) not in (2, 3):
            raise LoadingError(f"line {lineno}: expected 2 or 3 columns, found {len(cells)}")
        if not ids and not lam:
            try:
                float(cells[1])
            except ValueError:
                continue  # header
        ids.append(cells[0])
        lam.append(_float(cells[1], f"line {lineno}"))
        if len(cells) == 3 and cells[2] != "":
            delta.append(_float(cells[2], f"line {lineno}"))
    if not ids:
        raise LoadingError("no loadings found")
    if delta and len(delta) != len(ids):
        raise LoadingError("error variance given for some items but not all")
    return LoadingSet(tuple(ids), tuple(lam), tuple(delta) if delta else None)


def parse_loadings_json(text: str) -> LoadingSet:
    """Accepts ``{"loadings": {id: lambda}, "error_variances": {id: delta}}``
    or a list of ``{"item": id, "lambda": x, "delta": d}`` records."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LoadingError(f"invalid JSON: {exc}") from exc
    if isinstance(doc, dict) and "loadings" in doc:
        loadings = doc["loadings"]
        if not loadings:
            raise LoadingError("no loadings found")
        return LoadingSet.from_mapping(loadings, doc.get("error_variances"))
    if isinstance(doc, list):
        if not doc:
            raise LoadingError("no loadings found")
        try:
            ids = tuple(str(r["item"]) for r in doc)
            lam = tuple(float(r["lambda"]) for r in doc)
        except (KeyError, TypeError, ValueError) as exc:
            raise LoadingError(f"malformed loading record: {exc}") from exc
        has_delta = ["delta" in r for r in doc]
        if any(has_delta) and not all(has_delta):
            raise LoadingError("error variance given for some items but not all")
        deltas = tuple(float(r["delta"]) for r in doc) if all(has_delta) else None
        return LoadingSet(ids, lam, deltas)
    raise LoadingError("unrecognised loadings JSON layout")


def load_loadings(path: str | Path) -> LoadingSet:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8-sig")
    except OSError as exc:
        raise LoadingError(f"cannot read {path}: {exc.strerror or exc}") from exc
    if path.suffix.lower() == ".json":
        return parse_loadings_json(text)
    return parse_loadings_csv(text, "\t" if path.suffix.lower() == ".tsv" else ",")
