"""Label-and-rationale sources: a simulated oracle built from the full train half.

The simulated oracle is a logistic model fit on every training row.  Its
answer for a queried instance is its own predicted label (not the dataset's
ground truth — that keeps the label and the rationale mutually consistent)
plus the feature ranking of its local explanation, optionally truncated to
the top k.  A human can stand in for it through the HTTP service, which
implements the same answer surface asynchronously.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import TabularDataset
from .explain import explain_linear, to_ranking
from .linear_model import LogisticRegressionGD, TrainConfig, evaluate


@dataclass(frozen=True)
class OracleResponse:
    label: int
    ranking: tuple[int, ...]
    source: str

    def __post_init__(self):
        if self.label not in (0, 1):
            raise ValueError("label must be binary")
        if self.source not in ("simulated", "human"):
            raise ValueError("source must be 'simulated' or 'human'")


class SimulatedOracle:
    """Frozen full-data model answering queries with (label, ranking)."""

    def __init__(self, model: LogisticRegressionGD, importance_mode: str = "signed"):
        if importance_mode not in ("signed", "absolute"):
            raise ValueError(f"importance_mode must be 'signed' or 'absolute', got {importance_mode!r}")
        self.model = model
        self.importance_mode = importance_mode

    def answer(self, row, k: int | None = None) -> OracleResponse:
        row = np.asarray(row, dtype=np.float64)
        pair = self.model.predict_proba(row)
        label = int(np.argmax(pair))
        ranking = to_ranking(
            explain_linear(self.model, row), k=k, absolute=self.importance_mode == "absolute"
        )
        return OracleResponse(label=label, ranking=tuple(int(i) for i in ranking), source="simulated")


def build_simulated_oracle(train: TabularDataset, config: TrainConfig,
                           importance_mode: str = "signed") -> SimulatedOracle:
    """Fit the oracle model on the entire training half."""
    classes = np.unique(train.labels)
    if len(classes) < 2:
        raise ValueError("oracle training data must contain both classes")
    model = LogisticRegressionGD.from_config(config).fit(train.rows, train.labels)
    return SimulatedOracle(model, importance_mode=importance_mode)


def oracle_metrics(oracle: SimulatedOracle, test: TabularDataset) -> dict[str, float]:
    """Accuracy and F1 of the oracle model on the held-out half."""
    return evaluate(oracle.model, test)
