"""Feature ranking by chi-square and information gain over equal-frequency bins."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .features import SingleClass

__all__ = [
    "Discretization",
    "FeatureRanking",
    "RankRow",
    "discretize",
    "contingency",
    "chi_square",
    "info_gain",
    "rank_features",
]


@dataclass(frozen=True)
class Discretization:
    """``edges`` are the interior cut points; a value ``v`` falls in the bin
    counting the edges strictly below it."""

    edges: np.ndarray
    bins: np.ndarray
    n_bins: int


def discretize(values, b=10):
    """Equal-frequency binning.

    Cut ``i`` is the order statistic at rank ``ceil(i*n/b)``, so the binning
    depends only on the order of the values.  Duplicate cuts collapse and
    empty bins are merged away.
    """
    if b < 2:
        raise ValueError("b must be >= 2")
    v = np.asarray(values, dtype=float)
    n = v.size
    if n == 0:
        return Discretization(np.empty(0), np.empty(0, dtype=int), 0)
    s = np.sort(v)
    ranks = np.ceil(np.arange(1, b) * n / b).astype(int) - 1
    cuts = np.unique(s[np.clip(ranks, 0, n - 1)])
    cuts = cuts[cuts < s[-1]]  # a cut at the maximum leaves the top bin empty
    bins = np.searchsorted(cuts, v, side="left")
    used = np.unique(bins)
    remap = np.full(len(cuts) + 1, -1)
    remap[used] = np.arange(len(used))
    # keep the cut that closes each used bin except the last
    edges = cuts[used[:-1]] if len(used) > 1 else np.empty(0)
    return Discretization(edges, remap[bins], len(used))


def contingency(bins, labels):
    bins = np.asarray(bins, dtype=int)
    labels = np.asarray(labels)
    if bins.shape != labels.shape:
        raise ValueError("bins and labels must have the same length")
    classes = np.unique(labels)
    if len(classes) < 2:
        raise SingleClass("need both classes")
    b_ids = np.unique(bins)
    table = np.zeros((len(b_ids), len(classes)))
    np.add.at(table, (np.searchsorted(b_ids, bins), np.searchsorted(classes, labels)), 1)
    return table


def chi_square(bins, labels):
    """Pearson chi-square of the bins x classes table (cells with E = 0 add nothing)."""
    obs = contingency(bins, labels)
    exp = obs.sum(axis=1, keepdims=True) * obs.sum(axis=0, keepdims=True) / obs.sum()
    with np.errstate(divide="ignore", invalid="ignore"):
        cell = np.where(exp > 0, (obs - exp) ** 2 / exp, 0.0)
    return float(cell.sum())


def _entropy_bits(counts):
    counts = counts[counts > 0]
    p = counts / counts.sum()
    return float(-(p * np.log2(p)).sum())


def info_gain(bins, labels):
    """H(label) - H(label | bin), in bits."""
    obs = contingency(bins, labels)
    n = obs.sum()
    h = _entropy_bits(obs.sum(axis=0))
    h_cond = sum(row.sum() / n * _entropy_bits(row) for row in obs)
    return float(max(0.0, h - h_cond))


@dataclass(frozen=True)
class RankRow:
    rank: int
    feature: str
    chi2: float
    info_gain: float


@dataclass(frozen=True)
class FeatureRanking:
    rows: tuple
    criterion: str

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    @property
    def features(self):
        return [r.feature for r in self.rows]

    def rank_of(self, feature):
        for r in self.rows:
            if r.feature == feature:
                return r.rank
        raise KeyError(feature)

    def top(self, n):
        return self.features[:n]


def rank_features(data, b=10, criterion="chi2"):
    """Rank every schema feature; both statistics are always reported."""
    if criterion not in ("chi2", "infogain"):
        raise ValueError("criterion must be 'chi2' or 'infogain'")
    stats = []
    for j, name in enumerate(data.schema.names):
        bins = discretize(data.X[:, j], b).bins
        stats.append((name, chi_square(bins, data.y), info_gain(bins, data.y)))
    key = 1 if criterion == "chi2" else 2
    stats.sort(key=lambda s: (-s[key], s[0]))
    rows = tuple(RankRow(i + 1, name, c, g) for i, (name, c, g) in enumerate(stats))
    return FeatureRanking(rows, criterion)
