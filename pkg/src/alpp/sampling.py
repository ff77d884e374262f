"""Query scoring and selection: random, max-disagreement QBC, and the
rationale-weighted variant.

Both committee strategies score a candidate by how far members' predictive
distributions sit from a consensus, measured by KL divergence (natural log).
The weighted variant uses the weighted consensus sum_c w_c * P_c and scores
``max_c w_c * KL(P_c || consensus)``: a member the annotator's rationale
contradicts is silenced twice, in the consensus and in its own term.  With
uniform weights the weighted score is the plain QBC score scaled by 1/K, so
both strategies select identical instances (argmax is invariant under a
positive scale).  A weighted-sum variant (``sum_c w_c * KL``) is available
behind the same interface, off by default.

Score ties break by the lowest instance index; selection is deterministic
given the committee state and, for the random baseline, the supplied seed.
"""

from __future__ import annotations

import numpy as np

from .rationale import validate_weights

STRATEGIES = ("random", "qbc", "alpp")


def kl_divergence(p, q) -> float:
    """KL(p || q) in nats over a discrete distribution pair; 0*ln(0/q) = 0."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape:
        raise ValueError("distributions must have equal length")
    if (p < 0).any() or (q < 0).any() or not np.isclose(p.sum(), 1.0) or not np.isclose(q.sum(), 1.0):
        raise ValueError("inputs must be probability distributions")
    support = p > 0
    if (q[support] == 0).any():
        raise ValueError("q must be positive wherever p is")
    return float(np.sum(p[support] * (np.log(p[support]) - np.log(q[support]))))


def _member_kl(member_probs: np.ndarray, consensus: np.ndarray) -> np.ndarray:
    """KL of each member's pair against the consensus pair, per candidate row.

    ``member_probs`` is (K, n, 2), ``consensus`` (n, 2); members' pairs are
    strictly interior (the model clips them), so the logs stay finite.
    """
    return np.sum(member_probs * (np.log(member_probs) - np.log(consensus)[None]), axis=-1)


def disagreement_scores(member_probs: np.ndarray, weights: np.ndarray | None = None,
                        variant: str = "max") -> np.ndarray:
    """Per-candidate disagreement for a (K, n, 2) stack of member predictions.

    ``weights=None`` gives the unweighted QBC score against the uniform
    consensus; a weight vector gives the weighted score.  The consensus is
    computed as sum_c w_c * P_c in both cases (uniform w when None) so the
    uniform-weight reduction is exact.
    """
    if variant not in ("max", "sum"):
        raise ValueError(f"variant must be 'max' or 'sum', got {variant!r}")
    member_probs = np.asarray(member_probs, dtype=np.float64)
    k = member_probs.shape[0]
    w = np.full(k, 1.0 / k) if weights is None else validate_weights(weights)
    if len(w) != k:
        raise ValueError("one weight per member required")
    consensus = np.tensordot(w, member_probs, axes=(0, 0))
    kl = _member_kl(member_probs, consensus)
    per_member = kl if weights is None else w[:, None] * kl
    return per_member.max(axis=0) if variant == "max" else per_member.sum(axis=0)


def _scores(committee, rows, weighted: bool, variant: str = "max") -> np.ndarray:
    rows = np.asarray(rows, dtype=np.float64)
    single = rows.ndim == 1
    if single:
        rows = rows[None, :]
    probs = committee.member_predictions(rows)
    scores = disagreement_scores(probs, committee.weights if weighted else None, variant)
    return scores[0] if single else scores


def vanilla_max_disagreement(committee, rows):
    """QBC score: max over members of KL(P_c || mean consensus)."""
    return _scores(committee, rows, weighted=False)


def weighted_max_disagreement(committee, rows, variant: str = "max"):
    """Rationale-weighted score: max over members of w_c * KL(P_c || weighted consensus)."""
    return _scores(committee, rows, weighted=True, variant=variant)


def select_next(strategy: str, committee, train_rows, unlabeled_indices,
                rng, variant: str = "max") -> int:
    """Pick the next train-row index to query from the unlabeled pool.

    ``random`` draws uniformly from the pool (consuming one value from
    ``rng``); ``qbc``/``alpp`` take the argmax of their score over the pool,
    ties broken by the lowest instance index.  ``rng`` may be a Generator or
    an integer seed.
    """
    unlabeled_indices = np.asarray(unlabeled_indices, dtype=np.int64)
    if unlabeled_indices.size == 0:
        raise ValueError("unlabeled pool is empty")
    # keep the pool sorted so argmax's first-hit rule is the lowest index
    unlabeled_indices = np.sort(unlabeled_indices)

    if strategy == "random":
        if not isinstance(rng, np.random.Generator):
            rng = np.random.default_rng(rng)
        return int(unlabeled_indices[rng.integers(len(unlabeled_indices))])
    if strategy not in ("qbc", "alpp"):
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")

    candidate_rows = np.asarray(train_rows, dtype=np.float64)[unlabeled_indices]
    scores = _scores(committee, candidate_rows, weighted=(strategy == "alpp"), variant=variant)
    return int(unlabeled_indices[int(np.argmax(scores))])
