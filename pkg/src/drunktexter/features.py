"""Per-user, per-day-segment feature vectors and cohort category reports."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .corpus import DaySegment, Label, segment_tweets
from .lexicon import tokenize

__all__ = [
    "EmptySegment",
    "SingleClass",
    "EmptyDataset",
    "FeatureSchema",
    "FeatureVector",
    "Dataset",
    "CategoryReport",
    "segment_tokens",
    "featurize_user",
    "build_dataset",
    "category_report",
]

SENTIMENT_FEATURES = ("sentiment_pos_frac", "sentiment_neg_frac", "sentiment_net")


class EmptySegment(ValueError):
    def __init__(self, user_id, segment):
        super().__init__(f"user {user_id!r} has no tokens in segment {DaySegment(segment).value}")
        self.user_id = user_id
        self.segment = DaySegment(segment)


class SingleClass(ValueError):
    pass


class EmptyDataset(SingleClass):
    pass


@dataclass(frozen=True)
class FeatureSchema:
    names: tuple
    categories: tuple

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("feature names must be unique")

    @classmethod
    def from_lexicons(cls, lexicons):
        """One fraction per category (sentiment handled separately), then
        the sentiment features and the token count."""
        lexicons.require("sentiment_pos", "sentiment_neg")
        cats = tuple(n for n in lexicons.names if n not in ("sentiment_pos", "sentiment_neg"))
        return cls(cats + SENTIMENT_FEATURES + ("token_count",), cats)

    def __len__(self):
        return len(self.names)

    def index(self, name):
        return self.names.index(name)


@dataclass(frozen=True)
class FeatureVector:
    user_id: str
    segment: DaySegment
    values: np.ndarray


@dataclass(frozen=True)
class Dataset:
    """Feature matrix with labels (1 = drunk texter, 0 = negative class)."""

    schema: FeatureSchema
    X: np.ndarray
    y: np.ndarray
    ids: tuple

    def __post_init__(self):
        X = np.asarray(self.X, dtype=float)
        y = np.asarray(self.y, dtype=int)
        if X.ndim != 2 or X.shape[0] != y.shape[0] or X.shape[0] != len(self.ids):
            raise ValueError("rows, labels and ids must align")
        if X.shape[1] != len(self.schema):
            raise ValueError("matrix width must match the schema")
        if not np.all(np.isfinite(X)):
            raise ValueError("features must be finite")
        if not set(np.unique(y)) <= {0, 1}:
            raise ValueError("labels must be 0/1")
        if X.shape[0] < 2 or len(np.unique(y)) < 2:
            raise SingleClass("dataset needs at least two rows and both classes")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "ids", tuple(self.ids))

    @property
    def n(self):
        return self.X.shape[0]

    def subset(self, rows):
        rows = np.asarray(rows)
        return Dataset(self.schema, self.X[rows], self.y[rows], tuple(self.ids[i] for i in rows))


def segment_tokens(user, segment):
    return [tok for t in segment_tweets(user, segment) for tok in tokenize(t.text)]


def _category_counts(tokens, lexicons, names):
    counts = np.zeros(len(names))
    for tok, c in Counter(tokens).items():
        counts += c * lexicons.match_vector(tok, names)
    return counts


def featurize_user(user, segment, lexicons, schema=None, tokens=None):
    """Pooled keyword fractions over all of ``user``'s tokens in ``segment``.

    Raises :class:`EmptySegment` when the segment holds no tokens.
    """
    schema = schema or FeatureSchema.from_lexicons(lexicons)
    if tokens is None:
        tokens = segment_tokens(user, segment)
    total = len(tokens)
    if total == 0:
        raise EmptySegment(user.user_id, segment)
    names = schema.categories + ("sentiment_pos", "sentiment_neg")
    counts = _category_counts(tokens, lexicons, names)
    frac = counts / total
    pos, neg = frac[-2], frac[-1]
    values = np.concatenate((frac[:-2], [pos, neg, pos - neg, float(total)]))
    return FeatureVector(user.user_id, DaySegment(segment), values)


_POSITIVE = Label.DRUNK


def build_dataset(users, segment, lexicons, schema=None, negative=Label.NONDRUNK):
    """Rows for drunk texters (1) and ``negative``-labeled users (0), in input order.

    Users with no tokens in the segment are skipped.
    """
    schema = schema or FeatureSchema.from_lexicons(lexicons)
    negative = Label(negative)
    rows, labels, ids = [], [], []
    for u in users:
        if u.label is _POSITIVE:
            y = 1
        elif u.label is negative:
            y = 0
        else:
            continue
        try:
            fv = featurize_user(u, segment, lexicons, schema)
        except EmptySegment:
            continue
        rows.append(fv.values)
        labels.append(y)
        ids.append(u.user_id)
    if not rows:
        raise EmptyDataset(f"no labeled users with tokens in segment {DaySegment(segment).value}")
    if len(set(labels)) < 2:
        raise SingleClass(f"only one class present in segment {DaySegment(segment).value}")
    return Dataset(schema, np.vstack(rows), np.array(labels), tuple(ids))


@dataclass(frozen=True)
class CategoryReport:
    """Cohort means in percent: alpha/beta = drunk/non-drunk on weekdays,
    gamma/delta = drunk/non-drunk on weekends."""

    rows: dict

    COLUMNS = ("alpha", "beta", "gamma", "delta")

    def __getitem__(self, name):
        return self.rows[name]


def category_report(users, lexicons, scale=100.0):
    """Per-user pooled category fractions averaged within each cohort and segment."""
    names = tuple(lexicons.names)
    cells = {}
    for seg in (DaySegment.WEEKDAY, DaySegment.WEEKEND):
        for label in (Label.DRUNK, Label.NONDRUNK):
            vals = []
            for u in users:
                if u.label is not label:
                    continue
                tokens = segment_tokens(u, seg)
                if tokens:
                    vals.append(_category_counts(tokens, lexicons, names) / len(tokens))
            if not vals:
                raise SingleClass(f"no {label.value} users with tokens on {seg.value}s")
            cells[(label, seg)] = np.mean(vals, axis=0) * scale
    order = [(Label.DRUNK, DaySegment.WEEKDAY), (Label.NONDRUNK, DaySegment.WEEKDAY),
             (Label.DRUNK, DaySegment.WEEKEND), (Label.NONDRUNK, DaySegment.WEEKEND)]
    rows = {n: tuple(float(cells[key][i]) for key in order) for i, n in enumerate(names)}
    return CategoryReport(rows)
