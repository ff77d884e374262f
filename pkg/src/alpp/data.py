"""Tabular dataset ingestion, encoding, splitting, and labeled/unlabeled pools.

Raw CSV files are ingested against a declared :class:`FeatureSchema`,
categorical attributes are ordinally encoded (category -> position in the
schema's category list) so every original attribute stays a single rankable
feature, and every column is min-max scaled to [0, 1].  The production path
(:func:`load_dataset`) fits scaling statistics on the training half only and
clamps the test half, so no test-set statistics leak into the encoding.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

MISSING_MARKER = "?"

NUMERIC = "numeric"
CATEGORICAL = "categorical"


class DataError(ValueError):
    """Malformed input file, schema violation, or unsatisfiable split."""


@dataclass(frozen=True)
class Feature:
    """One input attribute: a numeric column or an ordinal-encoded categorical."""

    name: str
    kind: str
    categories: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.name:
            raise DataError("feature name must be non-empty")
        if self.kind not in (NUMERIC, CATEGORICAL):
            raise DataError(f"feature {self.name!r}: kind must be '{NUMERIC}' or '{CATEGORICAL}'")
        if self.kind == CATEGORICAL and len(self.categories) < 2:
            raise DataError(f"categorical feature {self.name!r} needs at least 2 categories")
        if self.kind == NUMERIC and self.categories:
            raise DataError(f"numeric feature {self.name!r} must not declare categories")


@dataclass(frozen=True)
class FeatureSchema:
    """Ordered feature declarations plus the binary label column."""

    features: tuple[Feature, ...]
    label_name: str
    positive_label: str

    def __post_init__(self):
        names = [f.name for f in self.features]
        if len(set(names)) != len(names):
            raise DataError("feature names must be unique")
        if not self.label_name:
            raise DataError("label_name must be non-empty")
        if not self.positive_label:
            raise DataError("positive_label must be non-empty")
        if self.label_name in names:
            raise DataError("label column cannot also be a feature")

    @property
    def feature_names(self) -> list[str]:
        return [f.name for f in self.features]

    @property
    def n_features(self) -> int:
        return len(self.features)


@dataclass(frozen=True)
class RawTable:
    """Ingested rows as strings, aligned to the schema's feature order."""

    schema: FeatureSchema
    rows: tuple[tuple[str, ...], ...]
    labels: tuple[str, ...]
    dropped_rows: int

    def __len__(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class TabularDataset:
    """Normalized feature matrix in [0, 1] with binary labels (1 = positive)."""

    schema: FeatureSchema
    rows: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=np.float64)
        labels = np.asarray(self.labels, dtype=np.int64)
        if rows.ndim != 2 or rows.shape[1] != self.schema.n_features:
            raise DataError(
                f"row matrix must be (n, {self.schema.n_features}), got {rows.shape}"
            )
        if labels.shape != (rows.shape[0],):
            raise DataError("label count must equal row count")
        if rows.size and (rows.min() < 0.0 or rows.max() > 1.0):
            raise DataError("normalized values must lie in [0, 1]")
        if not np.isin(labels, (0, 1)).all():
            raise DataError("labels must be binary")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class SplitPools:
    """50:50 train/test partition plus the labeled/unlabeled pools over train."""

    train: TabularDataset
    test: TabularDataset
    labeled_indices: np.ndarray
    unlabeled_indices: np.ndarray

    def __post_init__(self):
        labeled = np.asarray(self.labeled_indices, dtype=np.int64)
        unlabeled = np.asarray(self.unlabeled_indices, dtype=np.int64)
        n = len(self.train)
        if np.intersect1d(labeled, unlabeled).size:
            raise DataError("labeled and unlabeled pools overlap")
        combined = np.union1d(labeled, unlabeled)
        if combined.size != n or (combined != np.arange(n)).any():
            raise DataError("pools must partition all train indices")
        if abs(len(self.train) - len(self.test)) > 1:
            raise DataError("train/test sizes must differ by at most one row")
        object.__setattr__(self, "labeled_indices", np.sort(labeled))
        object.__setattr__(self, "unlabeled_indices", np.sort(unlabeled))


def ingest_csv(path, schema: FeatureSchema) -> RawTable:
    """Read a header-ed CSV, select the schema's columns, drop rows with '?'.

    Numeric cells are validated here so parse failures point at the exact
    row and column.  Columns not named by the schema are ignored.
    """
    try:
        handle = open(path, newline="", encoding="utf-8")
    except FileNotFoundError:
        raise DataError(f"dataset file not found: {path}") from None
    with handle:
        reader = csv.reader(handle)
        try:
            header = [cell.strip() for cell in next(reader)]
        except StopIteration:
            raise DataError(f"dataset file is empty: {path}") from None

        wanted = schema.feature_names + [schema.label_name]
        missing = [name for name in wanted if name not in header]
        if missing:
            raise DataError(
                f"header mismatch: column(s) {', '.join(missing)} not found in {path}"
            )
        positions = [header.index(name) for name in schema.feature_names]
        label_pos = header.index(schema.label_name)

        rows: list[tuple[str, ...]] = []
        labels: list[str] = []
        dropped = 0
        for line_no, record in enumerate(reader, start=2):
            if not record:
                continue
            cells = [record[i].strip() for i in positions]
            label = record[label_pos].strip()
            if MISSING_MARKER in cells or label == MISSING_MARKER:
                dropped += 1
                continue
            for feature, cell in zip(schema.features, cells):
                if feature.kind == NUMERIC:
                    try:
                        float(cell)
                    except ValueError:
                        raise DataError(
                            f"unparseable numeric cell at row {line_no}, column {feature.name!r}: {cell!r}"
                        ) from None
            rows.append(tuple(cells))
            labels.append(label)

    return RawTable(schema=schema, rows=tuple(rows), labels=tuple(labels), dropped_rows=dropped)


class TabularEncoder(BaseEstimator, TransformerMixin):
    """Ordinal-encode categoricals and min-max scale every column to [0, 1].

    ``fit`` learns per-column minima and maxima from the rows it is given;
    ``transform`` applies them (optionally clamping out-of-range values, for
    held-out data).  Constant columns map to 0.
    """

    def fit(self, raw: RawTable, y=None):
        values = self._to_values(raw)
        self.schema_ = raw.schema
        self.min_ = values.min(axis=0)
        self.max_ = values.max(axis=0)
        return self

    def transform(self, raw: RawTable, clamp: bool = False) -> np.ndarray:
        check_is_fitted(self, "min_")
        values = self._to_values(raw)
        span = self.max_ - self.min_
        out = np.zeros_like(values)
        nonconst = span > 0
        out[:, nonconst] = (values[:, nonconst] - self.min_[nonconst]) / span[nonconst]
        if clamp:
            np.clip(out, 0.0, 1.0, out=out)
        return out

    def inverse_transform_row(self, row: np.ndarray) -> list:
        """Map one normalized row back to human-readable raw values."""
        check_is_fitted(self, "min_")
        raw_values = self.min_ + np.asarray(row, dtype=np.float64) * (self.max_ - self.min_)
        readable = []
        for feature, value in zip(self.schema_.features, raw_values):
            if feature.kind == CATEGORICAL:
                index = int(round(value))
                index = min(max(index, 0), len(feature.categories) - 1)
                readable.append(feature.categories[index])
            else:
                readable.append(float(value))
        return readable

    def _to_values(self, raw: RawTable) -> np.ndarray:
        schema = raw.schema
        values = np.empty((len(raw), schema.n_features), dtype=np.float64)
        for j, feature in enumerate(schema.features):
            if feature.kind == NUMERIC:
                values[:, j] = [float(row[j]) for row in raw.rows]
            else:
                lookup = {cat: i for i, cat in enumerate(feature.categories)}
                column = np.empty(len(raw), dtype=np.float64)
                for i, row in enumerate(raw.rows):
                    try:
                        column[i] = lookup[row[j]]
                    except KeyError:
                        raise DataError(
                            f"unseen categorical value {row[j]!r} for feature {feature.name!r}"
                        ) from None
                values[:, j] = column
        return values


def encode_labels(raw: RawTable) -> np.ndarray:
    """Binary labels: 1 for the schema's positive label, 0 for the other value."""
    distinct = sorted(set(raw.labels))
    if len(distinct) != 2:
        raise DataError(f"expected exactly 2 label values, found {len(distinct)}: {distinct}")
    if raw.schema.positive_label not in distinct:
        raise DataError(
            f"positive_label {raw.schema.positive_label!r} not among label values {distinct}"
        )
    return np.array(
        [1 if lab == raw.schema.positive_label else 0 for lab in raw.labels], dtype=np.int64
    )


def encode_and_normalize(raw: RawTable, schema: FeatureSchema | None = None) -> TabularDataset:
    """Encode and scale using statistics of the rows being encoded."""
    if schema is not None and schema is not raw.schema:
        raw = RawTable(schema=schema, rows=raw.rows, labels=raw.labels, dropped_rows=raw.dropped_rows)
    encoder = TabularEncoder().fit(raw)
    return TabularDataset(schema=raw.schema, rows=encoder.transform(raw), labels=encode_labels(raw))


def _stratified_halves(labels: np.ndarray, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Shuffled per-class 50:50 partition; overall size difference <= 1."""
    train_parts, test_parts = [], []
    for cls in (1, 0):
        cls_idx = np.flatnonzero(labels == cls)
        perm = rng.permutation(cls_idx)
        cut = (len(perm) + 1) // 2 if cls == 1 else len(perm) // 2
        train_parts.append(perm[:cut])
        test_parts.append(perm[cut:])
    return np.sort(np.concatenate(train_parts)), np.sort(np.concatenate(test_parts))


def _initial_pool(train_labels: np.ndarray, rng: np.random.Generator, per_class: int = 5) -> np.ndarray:
    """Uniformly draw ``per_class`` labeled seeds per class from the train rows."""
    picks = []
    for cls in (1, 0):
        cls_idx = np.flatnonzero(train_labels == cls)
        if len(cls_idx) < per_class:
            raise DataError(
                f"class {cls} has only {len(cls_idx)} train rows; need at least {per_class}"
            )
        picks.append(rng.choice(cls_idx, size=per_class, replace=False))
    return np.sort(np.concatenate(picks))


def split_and_seed(dataset: TabularDataset, seed: int, per_class: int = 5) -> SplitPools:
    """Deterministic stratified 50:50 split plus the initial labeled pool."""
    if len(dataset) < 2 * 2 * per_class:
        raise DataError(f"dataset too small to split: {len(dataset)} rows")
    rng = np.random.default_rng(seed)
    train_idx, test_idx = _stratified_halves(dataset.labels, rng)
    train = TabularDataset(dataset.schema, dataset.rows[train_idx], dataset.labels[train_idx])
    test = TabularDataset(dataset.schema, dataset.rows[test_idx], dataset.labels[test_idx])
    labeled = _initial_pool(train.labels, rng, per_class)
    unlabeled = np.setdiff1d(np.arange(len(train)), labeled)
    return SplitPools(train=train, test=test, labeled_indices=labeled, unlabeled_indices=unlabeled)


@dataclass(frozen=True)
class PreparedData:
    """Everything the experiment and service need from one dataset load."""

    pools: SplitPools
    encoder: TabularEncoder
    label_values: tuple[str, str]
    dropped_rows: int


def load_dataset(path, schema: FeatureSchema, seed: int, per_class: int = 5,
                 pool_seed: int | None = None) -> PreparedData:
    """Ingest, split on raw rows, then encode with train-only statistics.

    The test half reuses the training half's minima/maxima and is clamped to
    [0, 1], so held-out rows never influence the encoding.  By default the
    initial labeled pool continues ``seed``'s random stream; passing
    ``pool_seed`` draws it independently, which lets repetitions share a
    split while re-seeding their pools.
    """
    raw = ingest_csv(path, schema)
    labels = encode_labels(raw)
    if len(raw) < 2 * 2 * per_class:
        raise DataError(f"dataset too small to split: {len(raw)} rows")
    rng = np.random.default_rng(seed)
    train_idx, test_idx = _stratified_halves(labels, rng)

    def subset(idx: np.ndarray) -> RawTable:
        return RawTable(
            schema=raw.schema,
            rows=tuple(raw.rows[i] for i in idx),
            labels=tuple(raw.labels[i] for i in idx),
            dropped_rows=0,
        )

    train_raw, test_raw = subset(train_idx), subset(test_idx)
    encoder = TabularEncoder().fit(train_raw)
    train = TabularDataset(schema, encoder.transform(train_raw), labels[train_idx])
    test = TabularDataset(schema, encoder.transform(test_raw, clamp=True), labels[test_idx])
    pool_rng = rng if pool_seed is None else np.random.default_rng(pool_seed)
    labeled = _initial_pool(train.labels, pool_rng, per_class)
    unlabeled = np.setdiff1d(np.arange(len(train)), labeled)
    pools = SplitPools(train=train, test=test, labeled_indices=labeled, unlabeled_indices=unlabeled)

    distinct = sorted(set(raw.labels))
    negative = distinct[0] if distinct[1] == schema.positive_label else distinct[1]
    return PreparedData(
        pools=pools,
        encoder=encoder,
        label_values=(negative, schema.positive_label),
        dropped_rows=raw.dropped_rows,
    )
