"""The pool-based active learning loop shared by the simulation and the service.

One :class:`ActiveLearningRun` owns the mutable state of a single strategy's
run over a fixed split: the labeled/unlabeled pools, the working label vector
(ground truth for the initial seeds, oracle- or human-provided for queried
rows), the rationale records, the current committee, and the learner's
per-query metrics.  The loop per iteration is

    retrain committee -> recompute weights (weighted strategy only)
    -> select next query -> obtain label + rationale -> grow labeled pool
    -> retrain learner on the full labeled pool -> evaluate on the test half

split into :meth:`advance_to_query` and :meth:`submit_annotation` so an
asynchronous annotator (the HTTP service) can drive exactly the same code
path as the in-process simulation.

All randomness is derived from the run seed through tagged SeedSequences, so
two runs with equal seeds and equal answers are bitwise identical, and every
strategy within a repetition sees the same initial pools and seed stream.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .committee import Committee, retrain
from .data import SplitPools
from .linear_model import LogisticRegressionGD, TrainConfig, evaluate
from .rationale import RationaleRecord, compute_weights, uniform_weights
from .sampling import STRATEGIES, select_next

_TAG_COMMITTEE = 1
_TAG_SELECTION = 2


def derived_seed(base_seed: int, tag: int, step: int = 0) -> int:
    """Stable child seed for one purpose within a run."""
    return int(np.random.SeedSequence([int(base_seed), tag, step]).generate_state(1)[0])


@dataclass(frozen=True)
class RunSettings:
    """Per-run knobs; mirrors the experiment configuration's loop section."""

    queries: int = 125
    committee_size: int = 10
    learner: TrainConfig = field(default_factory=TrainConfig)
    committee: TrainConfig = field(default_factory=TrainConfig)
    bootstrap_size: object = "auto"
    weight_mode: str = "history"
    disagreement_variant: str = "max"
    importance_mode: str = "signed"
    force_uniform_weights: bool = False
    oracle_k: int | None = None

    def __post_init__(self):
        if self.queries < 1:
            raise ValueError("queries must be at least 1")
        if self.weight_mode not in ("history", "latest"):
            raise ValueError("weight_mode must be 'history' or 'latest'")
        if self.importance_mode not in ("signed", "absolute"):
            raise ValueError("importance_mode must be 'signed' or 'absolute'")


@dataclass(frozen=True)
class QueryMetrics:
    query: int
    f1: float
    accuracy: float
    selected_index: int


@dataclass
class RunResult:
    strategy: str
    curve: list[QueryMetrics]
    truncated: bool = False


class ActiveLearningRun:
    """Mutable state of one strategy's loop over one split."""

    def __init__(self, pools: SplitPools, strategy: str, settings: RunSettings, seed: int):
        if strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
        self.pools = pools
        self.strategy = strategy
        self.settings = settings
        self.seed = seed

        self.labeled = list(int(i) for i in pools.labeled_indices)
        self.unlabeled = list(int(i) for i in pools.unlabeled_indices)
        self.working_labels = pools.train.labels.copy()
        self.records: list[RationaleRecord] = []
        self.curve: list[QueryMetrics] = []
        self.truncated = False

        self.committee_: Committee | None = None
        self.pending_index: int | None = None
        self._selection_rng = np.random.default_rng(derived_seed(seed, _TAG_SELECTION))
        self.initial_metrics = self._fit_and_evaluate()

    # -- loop halves -----------------------------------------------------

    @property
    def query_number(self) -> int:
        """1-based index of the query awaiting (or about to await) annotation."""
        return len(self.curve) + 1

    @property
    def finished(self) -> bool:
        return len(self.curve) >= self.settings.queries or self.truncated

    def advance_to_query(self) -> int | None:
        """Retrain the committee, refresh weights, and select the next query.

        Returns the selected train-row index, or None when the run is over
        (budget exhausted, or pool empty — the curve is then marked
        truncated).
        """
        if self.pending_index is not None:
            return self.pending_index
        if self.finished:
            return None
        if not self.unlabeled:
            self.truncated = True
            return None

        s = self.settings
        committee_seed = derived_seed(self.seed, _TAG_COMMITTEE, len(self.curve))
        X_labeled = self.pools.train.rows[self.labeled]
        y_labeled = self.working_labels[self.labeled]
        self.committee_ = retrain(
            X_labeled, y_labeled, s.committee_size, committee_seed, s.committee, s.bootstrap_size
        )
        self.committee_.weights = self._current_weights()

        self.pending_index = select_next(
            self.strategy,
            self.committee_,
            self.pools.train.rows,
            np.array(self.unlabeled, dtype=np.int64),
            self._selection_rng,
            variant=s.disagreement_variant,
        )
        return self.pending_index

    def submit_annotation(self, label: int, ranking) -> QueryMetrics:
        """Fold one (label, ranking) answer for the pending query into the run."""
        if self.pending_index is None:
            raise RuntimeError("no query is pending; call advance_to_query first")
        index = self.pending_index
        ranking = tuple(int(i) for i in ranking)

        self.unlabeled.remove(index)
        self.labeled.append(index)
        self.working_labels[index] = int(label)
        self.records.append(RationaleRecord(index, ranking, int(label)))
        self.pending_index = None

        metrics = self._fit_and_evaluate()
        point = QueryMetrics(
            query=len(self.curve) + 1,
            f1=metrics["f1"],
            accuracy=metrics["accuracy"],
            selected_index=index,
        )
        self.curve.append(point)
        return point

    def run_with_oracle(self, oracle) -> RunResult:
        """Drive the whole loop with a synchronous oracle."""
        while not self.finished:
            index = self.advance_to_query()
            if index is None:
                break
            response = oracle.answer(self.pools.train.rows[index], k=self.settings.oracle_k)
            self.submit_annotation(response.label, response.ranking)
        return RunResult(strategy=self.strategy, curve=list(self.curve), truncated=self.truncated)

    # -- internals -------------------------------------------------------

    def _current_weights(self) -> np.ndarray:
        s = self.settings
        if self.strategy != "alpp" or s.force_uniform_weights:
            return uniform_weights(s.committee_size)
        records = self.records if s.weight_mode == "history" else self.records[-1:]
        if not records:
            return uniform_weights(s.committee_size)
        member_rankings = [
            self.committee_.member_rankings(
                self.pools.train.rows[rec.instance_index], importance_mode=s.importance_mode
            )
            for rec in records
        ]
        return compute_weights(member_rankings, records, s.committee_size)

    def _fit_and_evaluate(self) -> dict[str, float]:
        learner = LogisticRegressionGD.from_config(self.settings.learner)
        learner.fit(self.pools.train.rows[self.labeled], self.working_labels[self.labeled])
        self.learner_ = learner
        return evaluate(learner, self.pools.test)
