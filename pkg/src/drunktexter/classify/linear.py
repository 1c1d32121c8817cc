"""Linear models on z-scored features: L2 logistic regression and a Pegasos SVM."""

import numpy as np


class Standardizer:
    def fit(self, X):
        self.mean_ = X.mean(axis=0)
        std = X.std(axis=0)
        self.scale_ = np.where(std > 0, std, 1.0)
        return self

    def transform(self, X):
        return (X - self.mean_) / self.scale_


def _sigmoid(z):
    out = np.empty_like(z, dtype=float)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def logistic_loss_grad(theta, X, y, lam):
    """Mean log-loss plus ``lam/2 * ||w||^2`` and its gradient.

    ``theta`` is ``(w_1..w_d, bias)``; the bias is not penalized.
    """
    w, b = theta[:-1], theta[-1]
    z = X @ w + b
    loss = np.mean(np.logaddexp(0.0, z) - y * z) + 0.5 * lam * (w @ w)
    r = (_sigmoid(z) - y) / len(y)
    grad = np.empty_like(theta)
    grad[:-1] = X.T @ r + lam * w
    grad[-1] = r.sum()
    return loss, grad


class LogisticRegression:
    """Full-batch gradient descent with Armijo backtracking."""

    def __init__(self, lam=1e-4, max_iter=500, tol=1e-8):
        self.lam = lam
        self.max_iter = max_iter
        self.tol = tol

    def fit(self, X, y, rng=None):
        self.scaler_ = Standardizer().fit(X)
        Z = self.scaler_.transform(X)
        theta = np.zeros(Z.shape[1] + 1)
        loss, grad = logistic_loss_grad(theta, Z, y, self.lam)
        step = 1.0
        self.converged_ = False
        for it in range(self.max_iter):
            g2 = grad @ grad
            if np.sqrt(g2) < self.tol:
                self.converged_ = True
                break
            while True:
                cand = theta - step * grad
                new_loss, new_grad = logistic_loss_grad(cand, Z, y, self.lam)
                if new_loss <= loss - 0.5 * step * g2 or step < 1e-12:
                    break
                step *= 0.5
            done = loss - new_loss < self.tol
            theta, loss, grad = cand, new_loss, new_grad
            step = min(step * 2.0, 1e3)
            if done:
                self.converged_ = True
                break
        self.n_iter_ = it + 1
        self.coef_ = theta[:-1]
        self.intercept_ = theta[-1]
        return self

    def decision_function(self, X):
        return self.scaler_.transform(X) @ self.coef_ + self.intercept_

    def score(self, X):
        return _sigmoid(self.decision_function(X))

    def predict(self, X):
        return (self.decision_function(X) > 0).astype(int)


class LinearSVM:
    """Hinge loss minimized by mini-batch Pegasos steps.

    The bias is an extra constant feature.  Steps follow
    ``1 / (lam * (t + 1/lam))``, which starts near 1 instead of ``1/lam``
    so the first iterates do not blow up.  The returned weights are the
    average of the iterates over the second half of training.  Scores are the
    decision values min-max scaled by the range seen on the training set.
    """

    def __init__(self, lam=1e-4, epochs=100, batch_size=8):
        self.lam = lam
        self.epochs = epochs
        self.batch_size = batch_size

    def fit(self, X, y, rng):
        self.scaler_ = Standardizer().fit(X)
        Z = np.hstack((self.scaler_.transform(X), np.ones((X.shape[0], 1))))
        s = np.where(y == 1, 1.0, -1.0)
        n, d = Z.shape
        lam, bs = self.lam, self.batch_size
        radius = 1.0 / np.sqrt(lam)
        w = np.zeros(d)
        avg = np.zeros(d)
        n_avg = 0
        steps_per_epoch = -(-n // bs)
        total = self.epochs * steps_per_epoch
        t = 0
        for _ in range(self.epochs):
            order = rng.permutation(n)
            for start in range(0, n, bs):
                t += 1
                batch = order[start:start + bs]
                Zb, sb = Z[batch], s[batch]
                viol = sb * (Zb @ w) < 1.0
                eta = 1.0 / (lam * t + 1.0)
                w *= 1.0 - eta * lam
                if viol.any():
                    w += (eta / len(batch)) * (sb[viol] @ Zb[viol])
                norm = np.sqrt(w @ w)
                if norm > radius:
                    w *= radius / norm
                if 2 * t > total:
                    avg += w
                    n_avg += 1
        self.coef_ = avg / max(n_avg, 1)
        self.converged_ = True
        f = Z @ self.coef_
        self.fmin_, self.fmax_ = float(f.min()), float(f.max())
        return self

    def decision_function(self, X):
        Z = np.hstack((self.scaler_.transform(X), np.ones((X.shape[0], 1))))
        return Z @ self.coef_

    def score(self, X):
        f = self.decision_function(X)
        span = self.fmax_ - self.fmin_
        if span <= 0:
            return np.full(f.shape, 0.5)
        return np.clip((f - self.fmin_) / span, 0.0, 1.0)

    def predict(self, X):
        return (self.decision_function(X) > 0).astype(int)
