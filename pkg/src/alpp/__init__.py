"""Pool-based active learning with rationale-weighted query-by-committee sampling."""

from .committee import Committee, retrain
from .data import (
    Feature,
    FeatureSchema,
    PreparedData,
    RawTable,
    SplitPools,
    TabularDataset,
    TabularEncoder,
    encode_and_normalize,
    ingest_csv,
    load_dataset,
    split_and_seed,
)
from .explain import LinearExplainer, explain_linear, to_ranking
from .experiment import (
    ExperimentConfig,
    paired_t_test,
    run_experiment,
    run_repetition,
    summarize,
    write_results_csv,
    write_summary_json,
)
from .linear_model import LogisticRegressionGD, TrainConfig, evaluate
from .loop import ActiveLearningRun, RunSettings
from .oracle import OracleResponse, SimulatedOracle, build_simulated_oracle
from .rationale import RationaleRecord, compute_weights, kendall_tau
from .sampling import (
    kl_divergence,
    select_next,
    vanilla_max_disagreement,
    weighted_max_disagreement,
)

__version__ = "0.1.0"

__all__ = [
    "ActiveLearningRun",
    "Committee",
    "ExperimentConfig",
    "Feature",
    "FeatureSchema",
    "LinearExplainer",
    "LogisticRegressionGD",
    "OracleResponse",
    "PreparedData",
    "RationaleRecord",
    "RawTable",
    "RunSettings",
    "SimulatedOracle",
    "SplitPools",
    "TabularDataset",
    "TabularEncoder",
    "TrainConfig",
    "build_simulated_oracle",
    "compute_weights",
    "encode_and_normalize",
    "evaluate",
    "explain_linear",
    "ingest_csv",
    "kendall_tau",
    "kl_divergence",
    "load_dataset",
    "paired_t_test",
    "retrain",
    "run_experiment",
    "run_repetition",
    "select_next",
    "split_and_seed",
    "summarize",
    "to_ranking",
    "vanilla_max_disagreement",
    "weighted_max_disagreement",
    "write_results_csv",
    "write_summary_json",
]
