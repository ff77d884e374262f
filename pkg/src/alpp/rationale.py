"""Agreement between annotator and model feature rankings, and committee weights.

Rankings are strict orderings of feature indices, so within one ranking no
two features can tie; the tie-corrected Kendall formulation therefore reduces
to plain pair counting, ``(C - D) / (n(n-1)/2)``.  When one ranking covers
only a subset of the other's features (a top-k rationale), the larger ranking
is restricted to the smaller one's feature set, preserving its relative
order, and agreement is computed over that common subset.

A committee member's weight grows with its mean agreement: tau is mapped
affinely to a score ``(tau + 1) / 2`` in [0, 1] and the scores are L1
normalized.  This is parameter-free, preserves the tau ordering, and gives
exactly zero weight to a perfectly anti-agreeing member.  Degenerate cases
(no rationale records yet, or all scores zero) fall back to uniform weights.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

WEIGHT_SUM_TOL = 1e-9


class RankingMismatchError(ValueError):
    """Rankings cover incomparable feature universes."""


@dataclass(frozen=True)
class RationaleRecord:
    """One annotated query: the instance, the annotator's ranking, the label."""

    instance_index: int
    annotator_ranking: tuple[int, ...]
    label: int

    def __post_init__(self):
        object.__setattr__(self, "annotator_ranking", tuple(int(i) for i in self.annotator_ranking))
        if len(set(self.annotator_ranking)) != len(self.annotator_ranking):
            raise ValueError("annotator ranking contains duplicate features")
        if self.label not in (0, 1):
            raise ValueError("label must be binary")


def kendall_tau(a, b) -> float:
    """Rank correlation in [-1, 1] between two strict feature rankings.

    If one ranking's feature set is a strict subset of the other's, the
    larger is restricted to the common features before counting pairs.
    Fewer than two common features carry no ordering information, so the
    result is 0 by convention.
    """
    a = [int(i) for i in a]
    b = [int(i) for i in b]
    set_a, set_b = set(a), set(b)
    if len(set_a) != len(a) or len(set_b) != len(b):
        raise ValueError("rankings must not repeat features")
    if set_a == set_b:
        common = set_a
    elif set_a < set_b:
        common = set_a
        b = [f for f in b if f in common]
    elif set_b < set_a:
        common = set_b
        a = [f for f in a if f in common]
    else:
        raise RankingMismatchError(
            f"rankings cover mismatched feature sets: {sorted(set_a)} vs {sorted(set_b)}"
        )

    m = len(common)
    if m < 2:
        return 0.0
    pos_b = {f: i for i, f in enumerate(b)}
    # positions in b of the items taken in a's order; concordant pairs are
    # the ascending ones, discordant the descending ones
    seq = np.array([pos_b[f] for f in a])
    diff = seq[None, :] - seq[:, None]
    upper = np.triu_indices(m, k=1)
    concordant = int(np.sum(diff[upper] > 0))
    discordant = int(np.sum(diff[upper] < 0))
    return (concordant - discordant) / (m * (m - 1) / 2)


def agreement_scores(mean_taus) -> np.ndarray:
    """Affine map of mean tau values from [-1, 1] to [0, 1]."""
    mean_taus = np.asarray(mean_taus, dtype=np.float64)
    return (mean_taus + 1.0) / 2.0


def weights_from_mean_taus(mean_taus) -> np.ndarray:
    """Normalize agreement scores into a weight vector; uniform when all zero."""
    scores = agreement_scores(mean_taus)
    total = scores.sum()
    if total <= 0.0:
        return uniform_weights(len(scores))
    return scores / total


def uniform_weights(k: int) -> np.ndarray:
    if k < 1:
        raise ValueError("committee size must be at least 1")
    return np.full(k, 1.0 / k)


def validate_weights(weights) -> np.ndarray:
    weights = np.asarray(weights, dtype=np.float64)
    if weights.ndim != 1 or len(weights) < 1:
        raise ValueError("weights must be a non-empty vector")
    if (weights < 0).any():
        raise ValueError("weights must be non-negative")
    if abs(weights.sum() - 1.0) > WEIGHT_SUM_TOL:
        raise ValueError(f"weights must sum to 1, got {weights.sum()!r}")
    return weights


def compute_weights(member_rankings_per_record, records, k: int) -> np.ndarray:
    """Per-member weights from rank agreement with the annotator's rationales.

    ``member_rankings_per_record[r][c]`` is member c's explanation ranking on
    record r's instance; ``records[r].annotator_ranking`` is what the
    annotator said.  Each member's mean tau across records is mapped to
    [0, 1] and normalized.  With no records (or all-zero scores) the result
    is uniform.
    """
    if k < 1:
        raise ValueError("committee size must be at least 1")
    if len(member_rankings_per_record) != len(records):
        raise ValueError("one ranking list per record required")
    if not records:
        return uniform_weights(k)

    taus = np.empty((len(records), k), dtype=np.float64)
    for r, (member_rankings, record) in enumerate(zip(member_rankings_per_record, records)):
        if len(member_rankings) != k:
            raise ValueError(f"record {r}: expected {k} member rankings")
        for c, ranking in enumerate(member_rankings):
            taus[r, c] = kendall_tau(ranking, record.annotator_ranking)
    return weights_from_mean_taus(taus.mean(axis=0))
