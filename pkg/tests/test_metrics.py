import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from drunktexter.classify import SingleClass, confusion, roc_auc, weighted_scores


def auc_pairs(scores, labels):
    """Concordant positive/negative pairs, ties counted half."""
    pos = [s for s, l in zip(scores, labels) if l]
    neg = [s for s, l in zip(scores, labels) if not l]
    total = 0.0
    for p, q in itertools.product(pos, neg):
        total += 1.0 if p > q else 0.5 if p == q else 0.0
    return total / (len(pos) * len(neg))


def test_auc_examples():
    assert roc_auc([0.9, 0.8, 0.7, 0.6], [1, 0, 1, 0]) == 0.75
    assert roc_auc([0.1, 0.2, 0.8, 0.9], [0, 0, 1, 1]) == 1.0
    assert roc_auc([0.3] * 6, [0, 1, 0, 1, 1, 0]) == 0.5
    with pytest.raises(SingleClass):
        roc_auc([0.1, 0.2], [1, 1])


def test_auc_matches_pair_count(rng):
    for _ in range(50):
        n = int(rng.integers(2, 201))
        labels = rng.integers(0, 2, n)
        labels[:2] = (0, 1)
        scores = rng.integers(0, 12, n) / 11.0  # plenty of ties
        got = roc_auc(scores, labels)
        assert abs(got - auc_pairs(scores, labels)) <= 1e-12
        assert roc_auc(scores ** 3, labels) == got
        assert roc_auc(2 * scores - 7, labels) == got


def test_confusion_counts():
    assert confusion([0, 0, 1, 1, 1], [0, 1, 1, 0, 1]) == (1, 1, 1, 2)


counts = st.integers(0, 60)


@given(counts, counts, counts, counts)
def test_weighted_recall_is_accuracy(tn, fp, fn, tp):
    n = tn + fp + fn + tp
    if tn + fp == 0 or fn + tp == 0:
        return
    p, r, f1 = weighted_scores(tn, fp, fn, tp)
    assert r == pytest.approx((tn + tp) / n, abs=1e-12)
    for v in (p, r, f1):
        assert 0.0 <= v <= 1.0


def test_weighted_precision_by_hand():
    # class 1: precision 2/3, support 3; class 0: precision 1/2, support 2
    p, r, f1 = weighted_scores(tn=1, fp=1, fn=1, tp=2)
    assert p == pytest.approx((3 * 2 / 3 + 2 * 1 / 2) / 5)
    assert r == pytest.approx(3 / 5)
    f_pos = 2 * (2 / 3) * (2 / 3) / (4 / 3)
    f_neg = 2 * 0.5 * 0.5 / 1.0
    assert f1 == pytest.approx((3 * f_pos + 2 * f_neg) / 5)
