"""Tree ensembles: random forest, bagging and SAMME AdaBoost."""

import math

import numpy as np

from .trees import DecisionTree, Stump


class _VotingEnsemble:
    def _make_tree(self, d):
        raise NotImplementedError

    def fit(self, X, y, rng):
        n, d = X.shape
        self.trees_ = []
        for _ in range(self.n_trees):
            rows = rng.integers(0, n, size=n)
            self.trees_.append(self._make_tree(d).fit(X[rows], y[rows], rng))
        self.converged_ = True
        return self

    def votes(self, X):
        return np.vstack([t.predict(X) for t in self.trees_])

    def score(self, X):
        """Fraction of trees voting for the positive class."""
        return self.votes(X).mean(axis=0)

    def predict(self, X):
        return (self.score(X) > 0.5).astype(int)


class RandomForest(_VotingEnsemble):
    def __init__(self, n_trees=100, max_features="sqrt", min_leaf=1):
        self.n_trees = n_trees
        self.max_features = max_features
        self.min_leaf = min_leaf

    def _make_tree(self, d):
        m = self.max_features
        if m == "sqrt":
            m = max(1, int(math.sqrt(d)))
        return DecisionTree("info_gain", min_leaf=self.min_leaf, max_features=m)


class Bagging(_VotingEnsemble):
    def __init__(self, n_trees=10, min_leaf=2):
        self.n_trees = n_trees
        self.min_leaf = min_leaf

    def _make_tree(self, d):
        return DecisionTree("gain_ratio", min_leaf=self.min_leaf)


class AdaBoost:
    """Discrete SAMME boosting of decision stumps (two classes)."""

    def __init__(self, n_estimators=50):
        self.n_estimators = n_estimators

    def fit(self, X, y, rng=None):
        n = X.shape[0]
        s = np.where(y == 1, 1, -1)
        w = np.full(n, 1.0 / n)
        self.stumps_, self.alphas_ = [], []
        for _ in range(self.n_estimators):
            stump = Stump().fit(X, y, w)
            pred = stump.predict_sign(X)
            err = float(w[pred != s].sum() / w.sum())
            if err >= 0.5:
                break
            err = max(err, 1e-10)
            # log(K - 1) vanishes for K = 2
            alpha = math.log((1 - err) / err)
            self.stumps_.append(stump)
            self.alphas_.append(alpha)
            if err <= 1e-10:
                break
            w = w * np.exp(alpha * (pred != s))
            w /= w.sum()
        if not self.stumps_:
            # first stump no better than chance: keep it with unit weight
            self.stumps_.append(Stump().fit(X, y, np.full(n, 1.0 / n)))
            self.alphas_.append(1.0)
        self.alphas_ = np.asarray(self.alphas_)
        self.converged_ = True
        return self

    def score(self, X):
        """Alpha-weighted share of stumps voting positive."""
        pos = np.vstack([st.predict_sign(X) > 0 for st in self.stumps_])
        return self.alphas_ @ pos / self.alphas_.sum()

    def predict(self, X):
        return (self.score(X) > 0.5).astype(int)
