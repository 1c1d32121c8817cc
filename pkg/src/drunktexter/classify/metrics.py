"""Binary classification metrics."""

import numpy as np

from ..features import SingleClass


def roc_auc(scores, labels):
    """Area under the ROC curve as a Mann-Whitney U statistic with midranks."""
    scores = np.asarray(scores, dtype=float)
    labels = np.asarray(labels).astype(bool)
    if scores.shape != labels.shape:
        raise ValueError("scores and labels must have the same length")
    n_pos = int(labels.sum())
    n_neg = labels.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise SingleClass("roc_auc needs both classes")
    _, inverse, counts = np.unique(scores, return_inverse=True, return_counts=True)
    midrank = np.cumsum(counts) - (counts - 1) / 2.0
    rank_sum = midrank[inverse][labels].sum()
    return float((rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg))


def confusion(y_true, y_pred):
    """``(tn, fp, fn, tp)`` for 0/1 labels."""
    y_true = np.asarray(y_true).astype(bool)
    y_pred = np.asarray(y_pred).astype(bool)
    tp = int(np.sum(y_true & y_pred))
    tn = int(np.sum(~y_true & ~y_pred))
    fp = int(np.sum(~y_true & y_pred))
    fn = int(np.sum(y_true & ~y_pred))
    return tn, fp, fn, tp


def weighted_scores(tn, fp, fn, tp):
    """Support-weighted precision, recall and F1 over both classes.

    A class that is never predicted gets precision 0.
    """
    n = tn + fp + fn + tp
    out = np.zeros(3)
    # (correct, predicted, support) for class 1 then class 0
    for correct, predicted, support in ((tp, tp + fp, tp + fn), (tn, tn + fn, tn + fp)):
        p = correct / predicted if predicted else 0.0
        r = correct / support if support else 0.0
        f = 2 * p * r / (p + r) if p + r > 0 else 0.0
        out += support / n * np.array([p, r, f])
    return tuple(float(v) for v in out)
