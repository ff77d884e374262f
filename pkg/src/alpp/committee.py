"""Bagging committee: bootstrap-trained logistic members plus agreement weights.

Every accepted annotation triggers a full retrain: each member fits an
independent with-replacement sample of the labeled pool.  The sample size
follows the ``auto`` rule by default (6 draws while the pool is the initial
10 rows, pool-size draws afterwards); ``pool`` always uses pool-size draws
and an integer fixes the size outright.  Single-class bootstrap samples are
kept as drawn — resampling them would bias the ensemble, and the underlying
model trains fine on one class.
"""

from __future__ import annotations

import numpy as np

from .explain import explain_linear, to_ranking
from .linear_model import LogisticRegressionGD, TrainConfig, fit_logistic_batch
from .rationale import uniform_weights, validate_weights

INITIAL_POOL_SIZE = 10
INITIAL_BOOTSTRAP_DRAWS = 6


def bootstrap_draws(pool_size: int, rule) -> int:
    """Resolve a bootstrap size rule to the number of with-replacement draws."""
    if rule == "auto":
        return INITIAL_BOOTSTRAP_DRAWS if pool_size == INITIAL_POOL_SIZE else pool_size
    if rule == "pool":
        return pool_size
    if isinstance(rule, int) and not isinstance(rule, bool) and rule >= 1:
        return rule
    raise ValueError(f"bootstrap size rule must be 'auto', 'pool', or a positive int, got {rule!r}")


class Committee:
    """K trained members with a weight per member; immutable except weights."""

    def __init__(self, members: list[LogisticRegressionGD], bootstrap_seed: int,
                 bootstrap_indices: np.ndarray, weights: np.ndarray | None = None):
        if len(members) < 1:
            raise ValueError("committee needs at least one member")
        self.members = list(members)
        self.bootstrap_seed = bootstrap_seed
        self.bootstrap_indices_ = bootstrap_indices
        self.weights = uniform_weights(len(members)) if weights is None else weights

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def weights(self) -> np.ndarray:
        return self._weights

    @weights.setter
    def weights(self, value):
        value = validate_weights(value)
        if len(value) != len(self.members):
            raise ValueError("one weight per member required")
        self._weights = value

    def member_predictions(self, rows) -> np.ndarray:
        """Stacked per-member probability pairs: (K, 2) for one row, (K, n, 2) for a matrix."""
        return np.stack([m.predict_proba(rows) for m in self.members])

    def member_rankings(self, row, k: int | None = None,
                        importance_mode: str = "signed") -> list[np.ndarray]:
        """Each member's explanation ranking on one instance.

        One argsort over the stacked (K, d) contribution matrix; row c equals
        ``to_ranking(explain_linear(member_c, row), k, absolute=...)``.
        """
        if importance_mode not in ("signed", "absolute"):
            raise ValueError(f"importance_mode must be 'signed' or 'absolute', got {importance_mode!r}")
        row = np.asarray(row, dtype=np.float64)
        contributions = np.stack([m.coef_ for m in self.members]) * row[None, :]
        if importance_mode == "absolute":
            contributions = np.abs(contributions)
        orders = np.argsort(-contributions, axis=1, kind="stable")
        return [orders[c, :k] if k is not None else orders[c] for c in range(len(self.members))]


def retrain(X_labeled, y_labeled, k: int, seed: int, config: TrainConfig,
            bootstrap_size="auto") -> Committee:
    """Train a fresh K-member committee on bootstrap samples of the labeled pool.

    Deterministic given ``seed``: the (K, draws) index matrix is drawn in one
    call, then members train one per row.  Weights start uniform; the caller
    re-derives them from rationale agreement after every retrain.
    """
    X_labeled = np.asarray(X_labeled, dtype=np.float64)
    y_labeled = np.asarray(y_labeled)
    n = len(X_labeled)
    if n == 0:
        raise ValueError("labeled pool is empty")
    if k < 2:
        raise ValueError("committee size must be at least 2")

    draws = bootstrap_draws(n, bootstrap_size)
    rng = np.random.default_rng(seed)
    indices = rng.integers(0, n, size=(k, draws))

    # all K bootstrap fits share one vectorized descent (per-member slices
    # stay independent); members come out as ordinary fitted models
    coefs, biases = fit_logistic_batch(X_labeled[indices], y_labeled[indices], config)
    members = []
    for c in range(k):
        member = LogisticRegressionGD.from_config(config)
        member.coef_ = coefs[c]
        member.intercept_ = float(biases[c])
        member.n_features_in_ = X_labeled.shape[1]
        member.classes_ = np.array([0, 1])
        members.append(member)
    return Committee(members=members, bootstrap_seed=seed, bootstrap_indices=indices)
