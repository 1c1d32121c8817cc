"""Stratified k-fold cross-validation with pooled, support-weighted metrics."""

from dataclasses import dataclass, field

import numpy as np

from .._rng import substream
from .metrics import confusion, roc_auc, weighted_scores
from .models import train


class TooFewPerClass(ValueError):
    pass


@dataclass(frozen=True)
class FoldAssignment:
    folds: np.ndarray
    k: int

    def test_rows(self, f):
        return np.flatnonzero(self.folds == f)

    def train_rows(self, f):
        return np.flatnonzero(self.folds != f)


def stratified_folds(labels, k, seed):
    """Shuffle each class by ``seed`` and deal its rows round-robin to ``k`` folds.

    Dealing continues across classes, so fold sizes differ by at most one.
    """
    labels = np.asarray(labels)
    if k < 2:
        raise ValueError("k must be >= 2")
    classes, counts = np.unique(labels, return_counts=True)
    if counts.min() < k:
        raise TooFewPerClass(f"every class needs at least k={k} rows; smallest has {counts.min()}")
    rng = np.random.default_rng(seed)
    folds = np.empty(len(labels), dtype=int)
    pos = 0
    for c in classes:
        idx = rng.permutation(np.flatnonzero(labels == c))
        folds[idx] = (pos + np.arange(len(idx))) % k
        pos += len(idx)
    return FoldAssignment(folds, k)


@dataclass
class EvalReport:
    classifier: str
    accuracy: float          # percent
    precision: float
    recall: float
    f1: float
    roc_auc: float
    confusion: tuple         # pooled (tn, fp, fn, tp)
    folds: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def row(self):
        return (self.accuracy, self.precision, self.recall, self.f1, self.roc_auc)

    def to_dict(self):
        tn, fp, fn, tp = self.confusion
        return {
            "classifier": self.classifier,
            "accuracy": self.accuracy,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "roc_auc": self.roc_auc,
            "confusion": {"tn": tn, "fp": fp, "fn": fn, "tp": tp},
            "folds": self.folds,
            "warnings": self.warnings,
        }


def cross_validate(spec, data, k=10, seed=0):
    """k-fold CV of ``spec`` on ``data``; confusions and scores pooled over folds."""
    assignment = stratified_folds(data.y, k, seed)
    scores = np.empty(data.n)
    preds = np.empty(data.n, dtype=int)
    folds, warnings = [], []
    for f in range(k):
        test, tr = assignment.test_rows(f), assignment.train_rows(f)
        model = train(spec, data.subset(tr), rng=substream(spec.seed, "trainers", f))
        if not model.converged:
            warnings.append(f"fold {f}: {spec.kind.value} did not converge")
        Xt = data.X[test]
        scores[test] = model.predict_score(Xt)
        preds[test] = model.predict(Xt)
        tn, fp, fn, tp = confusion(data.y[test], preds[test])
        folds.append({
            "fold": f,
            "n": int(len(test)),
            "confusion": {"tn": tn, "fp": fp, "fn": fn, "tp": tp},
            "accuracy": 100.0 * (tn + tp) / len(test),
            "roc_auc": roc_auc(scores[test], data.y[test]),
        })
    tn, fp, fn, tp = confusion(data.y, preds)
    p, r, f1 = weighted_scores(tn, fp, fn, tp)
    return EvalReport(
        classifier=spec.name,
        accuracy=100.0 * (tn + tp) / data.n,
        precision=p,
        recall=r,
        f1=f1,
        roc_auc=roc_auc(scores, data.y),
        confusion=(tn, fp, fn, tp),
        folds=folds,
        warnings=warnings,
    )
