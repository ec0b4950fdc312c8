"""Rating-scale item reduction by AUC of running item totals."""

from aucreduce.data import Dataset, LoadOptions, load_dataset, summarize
from aucreduce.psychometrics import (
    LoadingSet,
    construct_reliability,
    reliability_comparison,
    variance_extracted,
)
from aucreduce.reduction import (
    cumulative_auc_curve,
    item_auc_table,
    reduction_report,
    select_reduced_scale,
)
from aucreduce.roc import (
    DegenerateLabelsError,
    auc_rank,
    auc_trapezoid,
    confusion_at_cutoff,
    gini_from_auc,
    roc_points,
)
from aucreduce.synth import GeneratorSpec, generate

__version__ = "0.1.0"

__all__ = [
    "Dataset",
    "DegenerateLabelsError",
    "GeneratorSpec",
    "LoadOptions",
    "LoadingSet",
    "auc_rank",
    "auc_trapezoid",
    "confusion_at_cutoff",
    "construct_reliability",
    "cumulative_auc_curve",
    "generate",
    "gini_from_auc",
    "item_auc_table",
    "load_dataset",
    "reduction_report",
    "reliability_comparison",
    "roc_points",
    "select_reduced_scale",
    "summarize",
    "variance_extracted",
]
