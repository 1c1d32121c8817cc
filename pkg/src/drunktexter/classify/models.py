"""Classifier specifications, training and scoring."""

import enum
from dataclasses import dataclass, field

import numpy as np

from .bayes import Degenerate, GaussianNB
from .ensemble import AdaBoost, Bagging, RandomForest
from .linear import LinearSVM, LogisticRegression
from .trees import DecisionTree


class Kind(str, enum.Enum):
    SVM = "svm"
    LR = "lr"
    RF = "rf"
    BAGGING = "bagging"
    DT = "dt"
    NB = "nb"
    ADABOOST = "adaboost"


DISPLAY_NAMES = {
    Kind.SVM: "SVM", Kind.LR: "LR", Kind.RF: "RF", Kind.BAGGING: "Bagging",
    Kind.DT: "DT(J48)", Kind.NB: "NB", Kind.ADABOOST: "Ada Boost",
}

DEFAULTS = {
    Kind.LR: {"lam": 1e-4, "max_iter": 500, "tol": 1e-8},
    Kind.SVM: {"lam": 1e-4, "epochs": 100, "batch_size": 8},
    Kind.NB: {"var_floor": 1e-9},
    Kind.DT: {"min_leaf": 2},
    Kind.RF: {"n_trees": 100, "max_features": "sqrt", "min_leaf": 1},
    Kind.BAGGING: {"n_trees": 10, "min_leaf": 2},
    Kind.ADABOOST: {"n_estimators": 50},
}

_POSITIVE = {"lam", "tol", "var_floor"}
_COUNTS = {"max_iter", "epochs", "batch_size", "min_leaf", "n_trees", "n_estimators"}


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class ClassifierSpec:
    kind: Kind
    hyperparameters: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        kind = Kind(self.kind)
        params = dict(DEFAULTS[kind])
        unknown = set(self.hyperparameters) - set(params)
        if unknown:
            raise ValueError(f"unknown hyperparameters for {kind.value}: {sorted(unknown)}")
        params.update(self.hyperparameters)
        for k, v in params.items():
            if k in _POSITIVE and not v > 0:
                raise ValueError(f"{k} must be positive")
            if k in _COUNTS and not (isinstance(v, int) and v >= 1):
                raise ValueError(f"{k} must be a positive integer")
        if kind is Kind.RF and params["max_features"] != "sqrt" and not (
                isinstance(params["max_features"], int) and params["max_features"] >= 1):
            raise ValueError("max_features must be 'sqrt' or a positive integer")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "hyperparameters", params)

    @property
    def name(self):
        return DISPLAY_NAMES[self.kind]


_BUILDERS = {
    Kind.LR: LogisticRegression,
    Kind.SVM: LinearSVM,
    Kind.NB: GaussianNB,
    Kind.DT: lambda min_leaf: DecisionTree("gain_ratio", min_leaf=min_leaf),
    Kind.RF: RandomForest,
    Kind.BAGGING: Bagging,
    Kind.ADABOOST: AdaBoost,
}


@dataclass
class TrainedModel:
    spec: ClassifierSpec
    estimator: object
    n_features: int

    @property
    def converged(self):
        return bool(getattr(self.estimator, "converged_", True))

    def _check(self, X):
        X = np.asarray(X, dtype=float)
        single = X.ndim == 1
        X = np.atleast_2d(X)
        if X.shape[1] != self.n_features:
            raise DimensionMismatch(f"expected {self.n_features} features, got {X.shape[1]}")
        return X, single

    def predict_score(self, X):
        X, single = self._check(X)
        s = np.asarray(self.estimator.score(X), dtype=float)
        return float(s[0]) if single else s

    def predict(self, X):
        X, single = self._check(X)
        p = np.asarray(self.estimator.predict(X), dtype=int)
        return int(p[0]) if single else p


def train(spec, data, rng=None):
    """Fit the classifier described by ``spec`` on a :class:`Dataset`.

    Randomized learners draw from ``rng`` (default: a generator seeded with
    ``spec.seed``).
    """
    if rng is None:
        rng = np.random.default_rng(spec.seed)
    est = _BUILDERS[spec.kind](**spec.hyperparameters)
    est.fit(data.X, data.y, rng)
    return TrainedModel(spec, est, data.X.shape[1])


def predict_score(model, x):
    return model.predict_score(x)


__all__ = ["Kind", "ClassifierSpec", "TrainedModel", "DimensionMismatch", "Degenerate",
           "DEFAULTS", "DISPLAY_NAMES", "train", "predict_score"]
