"""Binary decision trees on numeric features, plus weighted decision stumps."""

import numpy as np


def _entropy(p):
    """Binary entropy in bits, elementwise."""
    p = np.clip(p, 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        h = -(p * np.log2(p) + (1 - p) * np.log2(1 - p))
    return np.nan_to_num(h)


def _best_threshold(x, y, min_leaf):
    """Best binary split of one feature by information gain.

    Returns ``(gain, split_info, threshold)`` or None when no split keeps
    ``min_leaf`` rows on each side.
    """
    order = np.argsort(x, kind="mergesort")
    xs, ys = x[order], y[order]
    n = len(xs)
    n_left = np.arange(1, n)
    valid = (xs[1:] > xs[:-1]) & (n_left >= min_leaf) & (n - n_left >= min_leaf)
    if not valid.any():
        return None
    pos_left = np.cumsum(ys)[:-1]
    pos_total = ys.sum()
    n_right = n - n_left
    h_parent = _entropy(np.array([pos_total / n]))[0]
    h_cond = (n_left * _entropy(pos_left / n_left) + n_right * _entropy((pos_total - pos_left) / n_right)) / n
    gain = np.where(valid, h_parent - h_cond, -np.inf)
    i = int(np.argmax(gain))
    split_info = _entropy(np.array([n_left[i] / n]))[0]
    return float(gain[i]), float(split_info), 0.5 * (xs[i] + xs[i + 1])


class DecisionTree:
    """Unpruned binary tree.

    ``criterion="gain_ratio"`` picks thresholds by information gain and the
    feature by gain ratio among candidates whose gain is at least the average
    (the C4.5 rule); ``"info_gain"`` picks the feature by gain alone.
    ``max_features`` limits the features examined at each node (random
    subspace, as in random forests).
    """

    def __init__(self, criterion="gain_ratio", min_leaf=2, max_depth=None, max_features=None):
        if criterion not in ("gain_ratio", "info_gain"):
            raise ValueError(f"unknown criterion {criterion!r}")
        self.criterion = criterion
        self.min_leaf = min_leaf
        self.max_depth = max_depth
        self.max_features = max_features

    def fit(self, X, y, rng=None):
        self.n_features_ = X.shape[1]
        self.feature_, self.threshold_, self.left_, self.right_, self.value_ = [], [], [], [], []
        self._rng = rng if rng is not None else np.random.default_rng(0)
        self._grow(X, y.astype(float), 0)
        for name in ("feature_", "threshold_", "left_", "right_", "value_"):
            setattr(self, name, np.asarray(getattr(self, name)))
        del self._rng
        self.converged_ = True
        return self

    def _leaf(self, y):
        node = len(self.feature_)
        self.feature_.append(-1)
        self.threshold_.append(0.0)
        self.left_.append(-1)
        self.right_.append(-1)
        self.value_.append(float(y.mean()))
        return node

    def _split(self, X, y):
        d = X.shape[1]
        if self.max_features is not None and self.max_features < d:
            feats = np.sort(self._rng.choice(d, size=self.max_features, replace=False))
        else:
            feats = np.arange(d)
        cands = []
        for j in feats:
            r = _best_threshold(X[:, j], y, self.min_leaf)
            if r is not None and r[0] > 1e-12:
                cands.append((int(j),) + r)
        if not cands:
            return None
        if self.criterion == "info_gain":
            return max(cands, key=lambda c: (c[1], -c[0]))
        mean_gain = np.mean([c[1] for c in cands])
        eligible = [c for c in cands if c[1] >= mean_gain - 1e-12]
        return max(eligible, key=lambda c: (c[1] / c[2] if c[2] > 0 else 0.0, -c[0]))

    def _grow(self, X, y, depth):
        p = y.mean()
        if p in (0.0, 1.0) or len(y) < 2 * self.min_leaf or (
                self.max_depth is not None and depth >= self.max_depth):
            return self._leaf(y)
        best = self._split(X, y)
        if best is None:
            return self._leaf(y)
        j, _, _, thr = best
        node = len(self.feature_)
        self.feature_.append(j)
        self.threshold_.append(thr)
        self.left_.append(-1)
        self.right_.append(-1)
        self.value_.append(float(p))
        mask = X[:, j] <= thr
        self.left_[node] = self._grow(X[mask], y[mask], depth + 1)
        self.right_[node] = self._grow(X[~mask], y[~mask], depth + 1)
        return node

    @property
    def depth(self):
        def walk(i):
            if self.feature_[i] < 0:
                return 0
            return 1 + max(walk(self.left_[i]), walk(self.right_[i]))
        return walk(0)

    def _leaves(self, X):
        node = np.zeros(X.shape[0], dtype=int)
        while True:
            feat = self.feature_[node]
            inner = feat >= 0
            if not inner.any():
                return node
            idx = np.flatnonzero(inner)
            go_left = X[idx, feat[idx]] <= self.threshold_[node[idx]]
            node[idx] = np.where(go_left, self.left_[node[idx]], self.right_[node[idx]])

    def score(self, X):
        """Positive-class frequency of the leaf each row lands in."""
        return self.value_[self._leaves(X)]

    def predict(self, X):
        return (self.score(X) > 0.5).astype(int)


class Stump:
    """One-feature threshold rule fit to weighted 0/1 error."""

    def fit(self, X, y, w):
        n, d = X.shape
        s = np.where(y == 1, 1.0, -1.0)
        best = (np.inf, 0, 0.0, 1)
        # predicting +1 everywhere costs the weight of negatives
        base = w[s < 0].sum()
        for j in range(d):
            order = np.argsort(X[:, j], kind="mergesort")
            xs, ws = X[order, j], (w * s)[order]
            # error of "x <= thr -> -1, else +1" after the first i+1 rows go left
            err_pos = base + np.cumsum(ws)
            cut = np.flatnonzero(xs[1:] > xs[:-1])
            if cut.size == 0:
                continue
            e1 = err_pos[cut]
            e2 = 1.0 * w.sum() - e1
            i1, i2 = int(np.argmin(e1)), int(np.argmin(e2))
            for e, i, pol in ((e1[i1], cut[i1], 1), (e2[i2], cut[i2], -1)):
                if e < best[0] - 1e-15:
                    best = (float(e), j, 0.5 * (xs[i] + xs[i + 1]), pol)
        # a constant prediction can beat every split under skewed weights
        pos_major = w[s > 0].sum() > w[s < 0].sum()
        const = float(min(base, w.sum() - base))
        if const < best[0] - 1e-15:
            best = (const, 0, -np.inf if pos_major else np.inf, 1)
        self.error_, self.feature_, self.threshold_, self.polarity_ = best
        return self

    def predict_sign(self, X):
        above = X[:, self.feature_] > self.threshold_
        return np.where(above, self.polarity_, -self.polarity_)
