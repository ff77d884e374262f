"""Benchmark driver: run strategies over repetitions, summarize, write results.

Each repetition re-seeds the train/test split and the initial labeled pool
(configurable to keep the split fixed), builds the simulated oracle once, and
then runs every configured strategy from the identical starting state with
the identical seed stream.  Learning curves are averaged over repetitions;
paired significance between strategies is computed over the per-query mean-F1
pairs (and, as a secondary report, over per-repetition mean F1).

Output files are byte-stable for a given configuration: floats are written
with ``repr`` (shortest round-trip form) and JSON keys are sorted.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

import numpy as np
from joblib import Parallel, delayed
from scipy import stats

from .data import FeatureSchema, PreparedData, load_dataset
from .linear_model import TrainConfig
from .loop import ActiveLearningRun, RunResult, RunSettings, derived_seed
from .oracle import build_simulated_oracle, oracle_metrics
from .sampling import STRATEGIES

_TAG_SPLIT = 3
_TAG_POOL = 4

RESULTS_HEADER = ["strategy", "repetition", "query", "f1", "accuracy", "selected_index"]


@dataclass(frozen=True)
class ExperimentConfig:
    dataset_path: str
    schema: FeatureSchema
    strategies: tuple[str, ...] = ("random", "qbc", "alpp")
    queries: int = 125
    repetitions: int = 10
    committee_size: int = 10
    seeds: tuple[int, ...] = tuple(range(10))
    oracle_k: int | None = None
    threshold: float = 0.54
    learner: TrainConfig = field(default_factory=TrainConfig)
    committee: TrainConfig = field(default_factory=TrainConfig)
    oracle: TrainConfig = field(default_factory=TrainConfig)
    weight_mode: str = "history"
    disagreement_variant: str = "max"
    importance_mode: str = "signed"
    bootstrap_size: object = "auto"
    force_uniform_weights: bool = False
    resplit_per_repetition: bool = True
    n_jobs: int = 1

    def __post_init__(self):
        if self.queries < 1:
            raise ValueError("queries must be at least 1")
        if self.repetitions < 1:
            raise ValueError("repetitions must be at least 1")
        if len(self.seeds) != self.repetitions:
            raise ValueError(
                f"need one seed per repetition: {len(self.seeds)} seeds, "
                f"{self.repetitions} repetitions"
            )
        unknown = set(self.strategies) - set(STRATEGIES)
        if unknown:
            raise ValueError(f"unknown strategies: {sorted(unknown)}")
        if not self.strategies:
            raise ValueError("at least one strategy required")

    def run_settings(self) -> RunSettings:
        return RunSettings(
            queries=self.queries,
            committee_size=self.committee_size,
            learner=self.learner,
            committee=self.committee,
            bootstrap_size=self.bootstrap_size,
            weight_mode=self.weight_mode,
            disagreement_variant=self.disagreement_variant,
            importance_mode=self.importance_mode,
            force_uniform_weights=self.force_uniform_weights,
            oracle_k=self.oracle_k,
        )


@dataclass
class RepetitionOutcome:
    repetition: int
    runs: dict[str, RunResult]
    oracle_accuracy: float
    oracle_f1: float


def prepare_repetition(config: ExperimentConfig, rep: int) -> PreparedData:
    """Load and split the dataset for one repetition's seeds."""
    rep_seed = config.seeds[rep]
    split_base = rep_seed if config.resplit_per_repetition else config.seeds[0]
    return load_dataset(
        config.dataset_path,
        config.schema,
        seed=derived_seed(split_base, _TAG_SPLIT),
        pool_seed=derived_seed(rep_seed, _TAG_POOL),
    )


def run_repetition(config: ExperimentConfig, rep: int,
                   strategies: tuple[str, ...] | None = None) -> RepetitionOutcome:
    """Run every strategy for one repetition from the identical starting state."""
    strategies = config.strategies if strategies is None else strategies
    prepared = prepare_repetition(config, rep)
    pools = prepared.pools
    oracle = build_simulated_oracle(pools.train, config.oracle, importance_mode=config.importance_mode)
    oracle_eval = oracle_metrics(oracle, pools.test)

    settings = config.run_settings()
    runs = {}
    for strategy in strategies:
        run = ActiveLearningRun(pools, strategy, settings, seed=config.seeds[rep])
        runs[strategy] = run.run_with_oracle(oracle)
    return RepetitionOutcome(
        repetition=rep,
        runs=runs,
        oracle_accuracy=oracle_eval["accuracy"],
        oracle_f1=oracle_eval["f1"],
    )


def run_experiment(config: ExperimentConfig) -> list[RepetitionOutcome]:
    """All repetitions, optionally in parallel; merged in repetition order."""
    if config.n_jobs == 1:
        return [run_repetition(config, rep) for rep in range(config.repetitions)]
    outcomes = Parallel(n_jobs=config.n_jobs)(
        delayed(run_repetition)(config, rep) for rep in range(config.repetitions)
    )
    return sorted(outcomes, key=lambda o: o.repetition)


def paired_t_test(curve_a, curve_b) -> tuple[float, float]:
    """Two-sided paired t-test over aligned per-query means.

    Returns (t statistic, p-value).  All-zero differences give p = 1 by
    convention; zero variance with a nonzero mean gives an infinite statistic
    and p = 0.
    """
    a = np.asarray(curve_a, dtype=np.float64)
    b = np.asarray(curve_b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1 or len(a) < 2:
        raise ValueError("need two aligned curves of equal length >= 2")
    d = a - b
    if np.all(d == 0):
        return 0.0, 1.0
    n = len(d)
    mean_d = d.mean()
    sd = d.std(ddof=1)
    if sd == 0.0:
        return float(np.sign(mean_d)) * float("inf"), 0.0
    t = mean_d / (sd / np.sqrt(n))
    p = 2.0 * float(stats.t.sf(abs(t), n - 1))
    return float(t), p


@dataclass
class StrategySummary:
    strategy: str
    mean_curve: list[float]
    mean_accuracy_curve: list[float]
    overall_mean_f1: float
    queries_to_threshold: float
    per_rep_queries_to_threshold: list[int]
    repetitions_not_reaching: int
    truncated_repetitions: int


@dataclass
class ExperimentSummary:
    threshold: float
    queries: int
    repetitions: int
    strategies: dict[str, StrategySummary]
    t_tests: dict[str, dict[str, float]]
    t_tests_by_repetition: dict[str, dict[str, float]]
    oracle_mean_accuracy: float
    oracle_mean_f1: float


def _first_reaching(curve_f1: np.ndarray, threshold: float, queries: int) -> int:
    """1-based first query index with F1 >= threshold; queries+1 when never."""
    hits = np.flatnonzero(curve_f1 >= threshold)
    return int(hits[0]) + 1 if hits.size else queries + 1


def summarize(outcomes: list[RepetitionOutcome], threshold: float = 0.54) -> ExperimentSummary:
    if not outcomes:
        raise ValueError("no repetitions to summarize")
    strategies = list(outcomes[0].runs)
    queries = max(len(run.curve) for o in outcomes for run in o.runs.values())

    summaries: dict[str, StrategySummary] = {}
    rep_mean_f1: dict[str, np.ndarray] = {}
    for strategy in strategies:
        curves = [o.runs[strategy] for o in outcomes]
        usable = min(len(r.curve) for r in curves)
        f1 = np.array([[p.f1 for p in r.curve[:usable]] for r in curves])
        acc = np.array([[p.accuracy for p in r.curve[:usable]] for r in curves])
        to_threshold = [_first_reaching(row, threshold, usable) for row in f1]
        summaries[strategy] = StrategySummary(
            strategy=strategy,
            mean_curve=[float(v) for v in f1.mean(axis=0)],
            mean_accuracy_curve=[float(v) for v in acc.mean(axis=0)],
            overall_mean_f1=float(f1.mean()),
            queries_to_threshold=float(np.mean(to_threshold)),
            per_rep_queries_to_threshold=[int(v) for v in to_threshold],
            repetitions_not_reaching=int(sum(v == usable + 1 for v in to_threshold)),
            truncated_repetitions=int(sum(r.truncated for r in curves)),
        )
        rep_mean_f1[strategy] = f1.mean(axis=1)

    t_tests, t_tests_rep = {}, {}
    for a, b in combinations(strategies, 2):
        usable = min(len(summaries[a].mean_curve), len(summaries[b].mean_curve))
        t, p = paired_t_test(summaries[a].mean_curve[:usable], summaries[b].mean_curve[:usable])
        t_tests[f"{a}_vs_{b}"] = {"t": t, "p": p, "n": usable}
        if len(outcomes) >= 2:
            t_r, p_r = paired_t_test(rep_mean_f1[a], rep_mean_f1[b])
            t_tests_rep[f"{a}_vs_{b}"] = {"t": t_r, "p": p_r, "n": len(outcomes)}

    return ExperimentSummary(
        threshold=threshold,
        queries=queries,
        repetitions=len(outcomes),
        strategies=summaries,
        t_tests=t_tests,
        t_tests_by_repetition=t_tests_rep,
        oracle_mean_accuracy=float(np.mean([o.oracle_accuracy for o in outcomes])),
        oracle_mean_f1=float(np.mean([o.oracle_f1 for o in outcomes])),
    )


def write_results_csv(outcomes: list[RepetitionOutcome], path) -> None:
    """Per-query results table; row order and float text are deterministic."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    strategies = list(outcomes[0].runs) if outcomes else []
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(RESULTS_HEADER)
        for strategy in strategies:
            for outcome in outcomes:
                for point in outcome.runs[strategy].curve:
                    writer.writerow([
                        strategy,
                        outcome.repetition,
                        point.query,
                        repr(point.f1),
                        repr(point.accuracy),
                        point.selected_index,
                    ])


def summary_to_dict(summary: ExperimentSummary) -> dict:
    return {
        "threshold": summary.threshold,
        "queries": summary.queries,
        "repetitions": summary.repetitions,
        "oracle": {
            "mean_accuracy": summary.oracle_mean_accuracy,
            "mean_f1": summary.oracle_mean_f1,
        },
        "strategies": {
            name: {
                "mean_curve_f1": s.mean_curve,
                "mean_curve_accuracy": s.mean_accuracy_curve,
                "overall_mean_f1": s.overall_mean_f1,
                "queries_to_threshold": s.queries_to_threshold,
                "per_repetition_queries_to_threshold": s.per_rep_queries_to_threshold,
                "repetitions_not_reaching_threshold": s.repetitions_not_reaching,
                "truncated_repetitions": s.truncated_repetitions,
            }
            for name, s in summary.strategies.items()
        },
        "paired_t_tests_over_queries": summary.t_tests,
        "paired_t_tests_over_repetitions": summary.t_tests_by_repetition,
    }


def write_summary_json(summary: ExperimentSummary, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(summary_to_dict(summary), handle, indent=2, sort_keys=True)
        handle.write("\n")
