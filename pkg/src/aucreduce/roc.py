"""Empirical ROC curves, AUC and the Gini transform.

Two independent AUC routes are provided:

* :func:`auc_trapezoid` integrates an empirical :class:`RocCurve`.
* :func:`auc_rank` counts concordant positive/negative pairs by sorting,
  which is the Mann-Whitney U statistic scaled to [0, 1].

Ties between a positive and a negative score count one half. The ROC
curve takes a single diagonal step through a tied score, so both routes
agree to floating-point rounding.

A case is predicted positive iff ``score >= cutoff``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray


class DegenerateLabelsError(ValueError):
    """Raised when the labels do not contain both classes."""


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    fn: int
    tn: int

    @property
    def positives(self) -> int:
        return self.tp + self.fn

    @property
    def negatives(self) -> int:
        return self.fp + self.tn

    @property
    def tpr(self) -> float:
        """Sensitivity."""
        return self.tp / self.positives

    @property
    def fpr(self) -> float:
        """False positive rate, i.e. 1 - specificity."""
        return self.fp / self.negatives

    @property
    def specificity(self) -> float:
        return self.tn / self.negatives


@dataclass(frozen=True)
class RocCurve:
    """Empirical ROC curve.

    ``thresholds[k]`` is the cutoff producing ``(fpr[k], tpr[k])``. The
    first threshold is ``+inf`` (nothing predicted positive); the rest
    are the distinct scores in descending order, so the last one is the
    minimum score and yields (1, 1).
    """

    fpr: NDArray[np.float64]
    tpr: NDArray[np.float64]
    thresholds: NDArray[np.float64]

    @property
    def points(self) -> list[tuple[float, float]]:
        return [(float(x), float(y)) for x, y in zip(self.fpr, self.tpr)]

    def __len__(self) -> int:
        return len(self.fpr)


def validate_inputs(
    scores: ArrayLike, labels: ArrayLike
) -> tuple[NDArray[np.float64], NDArray[np.bool_]]:
    """Coerce scores/labels to arrays and check them.

    Returns the float scores and a boolean mask of positive cases.
    """
    s = np.asarray(scores, dtype=np.float64)
    y = np.asarray(labels)
    if s.ndim != 1 or y.ndim != 1:
        raise ValueError("scores and labels must be 1-D")
    if s.shape != y.shape:
        raise ValueError(
            f"scores and labels differ in length ({s.shape[0]} vs {y.shape[0]})"
        )
    if s.size == 0:
        raise ValueError("scores and labels must be nonempty")
    if not np.all(np.isfinite(s)):
        raise ValueError("scores must be finite")
    if not np.all((y == 0) | (y == 1)):
        raise ValueError("labels must be 0 (negative) or 1 (positive)")
    pos = y == 1
    n_pos = int(pos.sum())
    if n_pos == 0 or n_pos == pos.size:
        raise DegenerateLabelsError(
            f"need both classes, got {n_pos} positive and {pos.size - n_pos} negative"
        )
    return s, pos


def confusion_at_cutoff(
    scores: ArrayLike, labels: ArrayLike, cutoff: float
) -> ConfusionMatrix:
    s, pos = validate_inputs(scores, labels)
    pred = s >= cutoff
    tp = int(np.count_nonzero(pred & pos))
    fp = int(np.count_nonzero(pred & ~pos))
    return ConfusionMatrix(
        tp=tp,
        fp=fp,
        fn=int(pos.sum()) - tp,
        tn=int((~pos).sum()) - fp,
    )


def roc_points(scores: ArrayLike, labels: ArrayLike) -> RocCurve:
    """Sweep the cutoff over every distinct score, highest first."""
    s, pos = validate_inputs(scores, labels)
    order = np.argsort(-s, kind="stable")
    s_sorted = s[order]
    pos_sorted = pos[order]

    # last index of each run of equal scores
    ends = np.flatnonzero(np.diff(s_sorted) != 0)
    ends = np.append(ends, s_sorted.size - 1)

    tp = np.cumsum(pos_sorted)[ends]
    fp = (ends + 1) - tp
    n_pos = tp[-1]
    n_neg = fp[-1]

    fpr = np.concatenate(([0.0], fp / n_neg))
    tpr = np.concatenate(([0.0], tp / n_pos))
    thresholds = np.concatenate(([np.inf], s_sorted[ends]))
    return RocCurve(fpr=fpr, tpr=tpr, thresholds=thresholds)


def auc_trapezoid(curve: RocCurve) -> float:
    x = np.asarray(curve.fpr, dtype=np.float64)
    y = np.asarray(curve.tpr, dtype=np.float64)
    if x.size < 2 or x.shape != y.shape:
        raise ValueError("ROC curve needs at least two matching points")
    if np.any(np.diff(x) < 0) or np.any(np.diff(y) < 0):
        raise ValueError("ROC coordinates must be non-decreasing")
    return float(np.sum(np.diff(x) * (y[1:] + y[:-1])) / 2.0)


def mann_whitney_u(scores: ArrayLike, labels: ArrayLike) -> float:
    """U statistic of the positives: wins plus half the ties."""
    s, pos = validate_inputs(scores, labels)
    return _twice_u(s, pos) / 2.0


def _twice_u(s: NDArray[np.float64], pos: NDArray[np.bool_]) -> int:
    # 2U is an integer, which keeps the statistic exact
    neg_sorted = np.sort(s[~pos])
    p = s[pos]
    below = np.searchsorted(neg_sorted, p, side="left")
    below_or_tied = np.searchsorted(neg_sorted, p, side="right")
    return int(below.sum() + below_or_tied.sum())


def auc_rank(scores: ArrayLike, labels: ArrayLike) -> float:
    """AUC as the probability a random positive outscores a random negative.

    Runs in O(M log M); ties count one half.
    """
    s, pos = validate_inputs(scores, labels)
    n_pos = int(pos.sum())
    n_neg = pos.size - n_pos
    return _twice_u(s, pos) / (2 * n_pos * n_neg)


def gini_from_auc(auc: float) -> float:
    if not 0.0 <= auc <= 1.0:
        raise ValueError(f"AUC must lie in [0, 1], got {auc}")
    return 2.0 * auc - 1.0
