"""Declarative YAML configuration for simulations and annotation sessions.

Layout (all experiment keys optional, shown with defaults):

    dataset:
      path: data/benchmark_census.csv     # relative to this config file
      label: income
      positive_label: ">50K"
      features:
        - {name: age, kind: numeric}
        - {name: workclass, kind: categorical, categories: [Federal-gov, ...]}
    experiment:
      strategies: [random, qbc, alpp]
      queries: 125
      repetitions: 10
      committee_size: 10
      seed_base: 0            # seeds default to seed_base .. seed_base+reps-1
      seeds: [...]            # explicit per-repetition seeds (overrides seed_base)
      oracle_k: null          # top-k rationale length; null = full rankings
      threshold: 0.54
      weight_mode: history    # history | latest
      disagreement_variant: max   # max | sum
      importance_mode: signed     # signed | absolute (explanation ranking order)
      bootstrap_size: auto    # auto | pool | positive integer
      force_uniform_weights: false
      resplit_per_repetition: true
      n_jobs: 1
    learner:   {learning_rate: 0.1, epochs: 500, l2_penalty: 1.0e-4}
    committee: {learning_rate: 0.1, epochs: 500, l2_penalty: 1.0e-4}
    oracle:    {learning_rate: 0.1, epochs: 500, l2_penalty: 1.0e-4}  # defaults to learner

Categorical features may omit ``categories``; the sorted distinct values
found in the dataset (missing markers excluded) are used, which makes raw
files with large category sets ergonomic.
"""

from __future__ import annotations

import csv
from pathlib import Path

import yaml

from .data import CATEGORICAL, DataError, Feature, FeatureSchema, MISSING_MARKER, NUMERIC
from .experiment import ExperimentConfig
from .linear_model import TrainConfig


class ConfigError(ValueError):
    """Invalid or incomplete configuration document."""


def _require(mapping: dict, key: str, context: str):
    if key not in mapping:
        raise ConfigError(f"missing required key {key!r} in {context}")
    return mapping[key]


def _infer_categories(path: Path, names: list[str]) -> dict[str, tuple[str, ...]]:
    """Sorted distinct values per named column, skipping missing markers."""
    found: dict[str, set[str]] = {name: set() for name in names}
    try:
        handle = open(path, newline="", encoding="utf-8")
    except FileNotFoundError:
        raise ConfigError(f"dataset file not found while inferring categories: {path}") from None
    with handle:
        reader = csv.reader(handle)
        header = [cell.strip() for cell in next(reader, [])]
        positions = {}
        for name in names:
            if name not in header:
                raise ConfigError(f"column {name!r} not present in {path}")
            positions[name] = header.index(name)
        for record in reader:
            if not record:
                continue
            for name, pos in positions.items():
                value = record[pos].strip()
                if value != MISSING_MARKER:
                    found[name].add(value)
    return {name: tuple(sorted(values)) for name, values in found.items()}


def _parse_schema(dataset_section: dict, base_dir: Path) -> tuple[str, FeatureSchema]:
    path = Path(str(_require(dataset_section, "path", "dataset")))
    if not path.is_absolute():
        path = base_dir / path
    label = str(_require(dataset_section, "label", "dataset"))
    positive = str(_require(dataset_section, "positive_label", "dataset"))
    raw_features = _require(dataset_section, "features", "dataset")
    if not isinstance(raw_features, list) or not raw_features:
        raise ConfigError("dataset.features must be a non-empty list")

    needs_inference = []
    specs = []
    for i, item in enumerate(raw_features):
        if not isinstance(item, dict):
            raise ConfigError(f"dataset.features[{i}] must be a mapping")
        name = str(_require(item, "name", f"dataset.features[{i}]"))
        kind = str(item.get("kind", NUMERIC))
        categories = item.get("categories")
        if kind == CATEGORICAL and categories is None:
            needs_inference.append(name)
        specs.append((name, kind, categories))

    inferred = _infer_categories(path, needs_inference) if needs_inference else {}
    features = []
    for name, kind, categories in specs:
        if kind == CATEGORICAL:
            cats = tuple(str(c) for c in categories) if categories is not None else inferred[name]
            features.append(Feature(name=name, kind=kind, categories=cats))
        else:
            features.append(Feature(name=name, kind=kind))
    try:
        schema = FeatureSchema(features=tuple(features), label_name=label, positive_label=positive)
    except DataError as exc:
        raise ConfigError(str(exc)) from exc
    return str(path), schema


def _parse_train_config(section: dict | None, default: TrainConfig) -> TrainConfig:
    if section is None:
        return default
    if not isinstance(section, dict):
        raise ConfigError("model sections must be mappings")
    try:
        return TrainConfig(
            learning_rate=float(section.get("learning_rate", default.learning_rate)),
            epochs=int(section.get("epochs", default.epochs)),
            l2_penalty=float(section.get("l2_penalty", default.l2_penalty)),
            init_seed=int(section.get("init_seed", default.init_seed)),
        )
    except ValueError as exc:
        raise ConfigError(f"invalid training configuration: {exc}") from exc


def load_config(path, seed_offset: int = 0,
                strategies_override: tuple[str, ...] | None = None) -> ExperimentConfig:
    """Parse a YAML config document into an :class:`ExperimentConfig`."""
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as handle:
            document = yaml.safe_load(handle)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except yaml.YAMLError as exc:
        raise ConfigError(f"config file is not valid YAML: {exc}") from exc
    if not isinstance(document, dict):
        raise ConfigError("config document must be a mapping")

    dataset_section = _require(document, "dataset", "config")
    dataset_path, schema = _parse_schema(dataset_section, path.parent)

    exp = document.get("experiment") or {}
    if not isinstance(exp, dict):
        raise ConfigError("experiment section must be a mapping")

    repetitions = int(exp.get("repetitions", 10))
    if "seeds" in exp:
        seeds = tuple(int(s) for s in exp["seeds"])
    else:
        base = int(exp.get("seed_base", 0))
        seeds = tuple(base + i for i in range(repetitions))
    seeds = tuple(s + seed_offset for s in seeds)

    strategies = strategies_override or tuple(str(s) for s in exp.get("strategies", ("random", "qbc", "alpp")))

    bootstrap_size = exp.get("bootstrap_size", "auto")
    if bootstrap_size not in ("auto", "pool"):
        try:
            bootstrap_size = int(bootstrap_size)
        except (TypeError, ValueError):
            raise ConfigError(
                f"bootstrap_size must be 'auto', 'pool', or an integer, got {bootstrap_size!r}"
            ) from None

    oracle_k = exp.get("oracle_k")
    learner = _parse_train_config(document.get("learner"), TrainConfig())
    try:
        return ExperimentConfig(
            dataset_path=dataset_path,
            schema=schema,
            strategies=strategies,
            queries=int(exp.get("queries", 125)),
            repetitions=repetitions,
            committee_size=int(exp.get("committee_size", 10)),
            seeds=seeds,
            oracle_k=None if oracle_k is None else int(oracle_k),
            threshold=float(exp.get("threshold", 0.54)),
            learner=learner,
            committee=_parse_train_config(document.get("committee"), learner),
            oracle=_parse_train_config(document.get("oracle"), learner),
            weight_mode=str(exp.get("weight_mode", "history")),
            disagreement_variant=str(exp.get("disagreement_variant", "max")),
            importance_mode=str(exp.get("importance_mode", "signed")),
            bootstrap_size=bootstrap_size,
            force_uniform_weights=bool(exp.get("force_uniform_weights", False)),
            resplit_per_repetition=bool(exp.get("resplit_per_repetition", True)),
            n_jobs=int(exp.get("n_jobs", 1)),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
