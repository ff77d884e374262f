"""Local per-instance explanations for linear models, and ranking conversion.

For a linear model the additive log-odds contribution of feature j on a row
is simply ``coef[j] * row[j]`` (the bias has no feature to rank and is
excluded).  Rankings order features by importance.  Two importance modes
exist: magnitude (``|contribution|``) and signed (contribution toward the
positive class, descending).  The sampling pipeline defaults to signed:
rank agreement is meant to separate trustworthy committee members from
noise-fitted ones, and magnitude ranking is blind to a confidently *wrong*
coefficient — a member that pushes the prediction the opposite way still
ranks the feature highly, earns spurious agreement, and gets trusted.
Orientation is always toward the positive class; flipping both rankings to
orient at the negative label would reverse each pairwise comparison on both
sides and leave their rank correlation unchanged.

The explainer is a small interface so perturbation-based methods can slot in
later without touching callers.
"""

from __future__ import annotations

import numpy as np


class Explainer:
    """Maps (model, instance) to a per-feature contribution vector."""

    def explain(self, model, row: np.ndarray) -> np.ndarray:
        raise NotImplementedError


class LinearExplainer(Explainer):
    """Exact explanation for linear models: coefficient times feature value."""

    def explain(self, model, row: np.ndarray) -> np.ndarray:
        return explain_linear(model, row)


def explain_linear(model, row) -> np.ndarray:
    """Per-feature contributions ``coef * row``; bias excluded."""
    row = np.asarray(row, dtype=np.float64)
    coef = np.asarray(model.coef_, dtype=np.float64)
    if row.shape != coef.shape:
        raise ValueError(f"row length {row.shape} != coefficient length {coef.shape}")
    return coef * row


IMPORTANCE_MODES = ("signed", "absolute")


def to_ranking(contributions, k: int | None = None, absolute: bool = True) -> np.ndarray:
    """Feature indices sorted by importance, most important first.

    Importance is ``|contribution|`` by default; ``absolute=False`` ranks by
    the signed value (positive-class direction first).  Ties break by
    ascending feature index, which keeps every downstream rank comparison
    deterministic.  ``k`` truncates to the top-k.
    """
    contributions = np.asarray(contributions, dtype=np.float64)
    if contributions.ndim != 1:
        raise ValueError("contributions must be a 1-d vector")
    n = len(contributions)
    if k is not None and not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    importance = np.abs(contributions) if absolute else contributions
    # stable sort on the negated importance = ties resolved by ascending index
    order = np.argsort(-importance, kind="stable")
    return order[:k] if k is not None else order


def validate_ranking(ranking, n_features: int) -> np.ndarray:
    """Check a ranking is a (partial) permutation of [0, n_features)."""
    ranking = np.asarray(ranking, dtype=np.int64)
    if ranking.ndim != 1 or len(ranking) < 1:
        raise ValueError("ranking must be a non-empty 1-d index list")
    if len(np.unique(ranking)) != len(ranking):
        raise ValueError("ranking contains duplicate feature indices")
    if ranking.min() < 0 or ranking.max() >= n_features:
        raise ValueError(f"ranking indices must lie in [0, {n_features})")
    return ranking
