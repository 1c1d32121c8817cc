"""Seven-classifier framework evaluated by stratified k-fold cross-validation."""

from ..features import Dataset, SingleClass
from .metrics import confusion, roc_auc, weighted_scores
from .models import (DEFAULTS, DISPLAY_NAMES, ClassifierSpec, Degenerate, DimensionMismatch,
                     Kind, TrainedModel, predict_score, train)
from .validation import EvalReport, FoldAssignment, TooFewPerClass, cross_validate, stratified_folds

ALL_KINDS = tuple(Kind)

__all__ = [
    "Dataset", "SingleClass", "Kind", "ALL_KINDS", "ClassifierSpec", "TrainedModel", "train",
    "predict_score", "DimensionMismatch", "Degenerate", "DEFAULTS", "DISPLAY_NAMES",
    "EvalReport", "FoldAssignment", "TooFewPerClass", "stratified_folds", "cross_validate",
    "roc_auc", "confusion", "weighted_scores",
]
