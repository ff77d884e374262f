"""Binary logistic regression trained from scratch by full-batch gradient descent.

Coefficients and bias start at zero, every epoch takes one full-batch step on
the L2-regularized mean log loss (the bias is not penalized), and nothing is
randomized, so training is bitwise deterministic for a given configuration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import expit
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted

PROB_FLOOR = 1e-12


class TrainingDivergedError(RuntimeError):
    """Loss became non-finite during gradient descent."""

    def __init__(self, epoch: int):
        super().__init__(f"training loss became non-finite at epoch {epoch}")
        self.epoch = epoch


@dataclass(frozen=True)
class TrainConfig:
    """Gradient-descent hyperparameters.

    ``init_seed`` is reserved: parameters initialize to zero, so training is
    already deterministic and the seed currently has no effect.
    """

    learning_rate: float = 0.1
    epochs: int = 500
    l2_penalty: float = 1e-4
    init_seed: int = 0

    def __post_init__(self):
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.epochs < 1:
            raise ValueError("epochs must be at least 1")
        if self.l2_penalty < 0:
            raise ValueError("l2_penalty must be non-negative")


def log_loss_l2(coef: np.ndarray, bias: float, X: np.ndarray, y: np.ndarray, l2: float) -> float:
    """Mean binary cross-entropy plus (l2/2)*||coef||^2; the bias is unpenalized."""
    p = expit(X @ coef + bias)
    p = np.clip(p, PROB_FLOOR, 1.0 - PROB_FLOOR)
    bce = -np.mean(y * np.log(p) + (1.0 - y) * np.log(1.0 - p))
    return float(bce + 0.5 * l2 * np.dot(coef, coef))


def log_loss_l2_grad(
    coef: np.ndarray, bias: float, X: np.ndarray, y: np.ndarray, l2: float
) -> tuple[np.ndarray, float]:
    """Analytic gradient of :func:`log_loss_l2` with respect to (coef, bias)."""
    residual = expit(X @ coef + bias) - y
    grad_coef = X.T @ residual / len(y) + l2 * coef
    grad_bias = float(np.mean(residual))
    return grad_coef, grad_bias


class LogisticRegressionGD(BaseEstimator, ClassifierMixin):
    """Logistic regression with zero init and fixed-epoch full-batch descent.

    Single-class training sets are legal: with all labels equal the bias
    simply drifts toward that class, which is exactly what tiny bootstrap
    samples need.
    """

    def __init__(self, learning_rate: float = 0.1, epochs: int = 500,
                 l2_penalty: float = 1e-4, init_seed: int = 0):
        self.learning_rate = learning_rate
        self.epochs = epochs
        self.l2_penalty = l2_penalty
        self.init_seed = init_seed

    @classmethod
    def from_config(cls, config: TrainConfig) -> "LogisticRegressionGD":
        return cls(
            learning_rate=config.learning_rate,
            epochs=config.epochs,
            l2_penalty=config.l2_penalty,
            init_seed=config.init_seed,
        )

    def fit(self, X, y):
        TrainConfig(self.learning_rate, self.epochs, self.l2_penalty, self.init_seed)
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        if X.ndim != 2:
            raise ValueError("X must be a 2-d matrix")
        if len(X) < 1 or len(y) != len(X):
            raise ValueError("need at least one row and matching labels")

        coef = np.zeros(X.shape[1])
        bias = 0.0
        for epoch in range(self.epochs):
            # the cross-entropy term is computed on clipped probabilities and
            # is always finite, so the loss can only blow up through the
            # parameters themselves (the L2 term, or NaN propagation)
            if not (np.isfinite(coef @ coef) and np.isfinite(bias)):
                raise TrainingDivergedError(epoch)
            grad_coef, grad_bias = log_loss_l2_grad(coef, bias, X, y, self.l2_penalty)
            coef = coef - self.learning_rate * grad_coef
            bias = bias - self.learning_rate * grad_bias

        self.coef_ = coef
        self.intercept_ = bias
        self.n_features_in_ = X.shape[1]
        self.classes_ = np.array([0, 1])
        return self

    def predict_proba(self, X):
        """(P(y=0), P(y=1)) pairs, clipped strictly inside (0, 1).

        Accepts a single row (returns shape ``(2,)``) or a matrix (returns
        ``(n, 2)``).
        """
        check_is_fitted(self, "coef_")
        X = np.asarray(X, dtype=np.float64)
        single = X.ndim == 1
        if single:
            X = X[None, :]
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"row length {X.shape[1]} != coefficient length {self.n_features_in_}"
            )
        p = expit(X @ self.coef_ + self.intercept_)
        p = np.clip(p, PROB_FLOOR, 1.0 - PROB_FLOOR)
        pairs = np.stack([1.0 - p, p], axis=1)
        return pairs[0] if single else pairs

    def predict(self, X):
        proba = self.predict_proba(X)
        if proba.ndim == 1:
            return int(proba[1] > proba[0])
        return (proba[:, 1] > proba[:, 0]).astype(np.int64)


def fit_logistic_batch(X_batch: np.ndarray, y_batch: np.ndarray,
                       config: TrainConfig) -> tuple[np.ndarray, np.ndarray]:
    """Train B independent logistic models in one vectorized descent.

    ``X_batch`` is (B, n, d) and ``y_batch`` (B, n); every model takes the
    same full-batch steps as :meth:`LogisticRegressionGD.fit` on its own
    slice (the batch dimension never mixes), just without B separate Python
    loops.  Returns (coefs (B, d), biases (B,)).
    """
    X_batch = np.asarray(X_batch, dtype=np.float64)
    y_batch = np.asarray(y_batch, dtype=np.float64)
    b_count, n, d = X_batch.shape
    coefs = np.zeros((b_count, d))
    biases = np.zeros(b_count)
    lr = config.learning_rate
    for epoch in range(config.epochs):
        if not (np.isfinite(np.einsum("bd,bd->b", coefs, coefs)).all()
                and np.isfinite(biases).all()):
            raise TrainingDivergedError(epoch)
        p = expit(np.einsum("bnd,bd->bn", X_batch, coefs) + biases[:, None])
        residual = p - y_batch
        grad_coefs = np.einsum("bnd,bn->bd", X_batch, residual) / n + config.l2_penalty * coefs
        grad_biases = residual.mean(axis=1)
        coefs = coefs - lr * grad_coefs
        biases = biases - lr * grad_biases
    return coefs, biases


def accuracy_score(y_true, y_pred) -> float:
    y_true = np.asarray(y_true)
    y_pred = np.asarray(y_pred)
    return float(np.mean(y_true == y_pred))


def f1_score(y_true, y_pred) -> float:
    """F1 for the positive class; 0 when precision + recall is degenerate."""
    y_true = np.asarray(y_true)
    y_pred = np.asarray(y_pred)
    tp = int(np.sum((y_true == 1) & (y_pred == 1)))
    fp = int(np.sum((y_true == 0) & (y_pred == 1)))
    fn = int(np.sum((y_true == 1) & (y_pred == 0)))
    denom = 2 * tp + fp + fn
    if denom == 0:
        return 0.0
    return 2.0 * tp / denom


def evaluate(model: LogisticRegressionGD, dataset) -> dict[str, float]:
    """Accuracy and positive-class F1 on a dataset at threshold 0.5."""
    if len(dataset) == 0:
        raise ValueError("cannot evaluate on an empty dataset")
    y_pred = model.predict(dataset.rows)
    return {
        "accuracy": accuracy_score(dataset.labels, y_pred),
        "f1": f1_score(dataset.labels, y_pred),
    }
