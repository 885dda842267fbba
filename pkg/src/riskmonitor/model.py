"""Logistic risk classifier: fit, predict, bucket, evaluate, persist.

Features are standardized (continuous) and one-hot encoded with the
first category as dropped reference level (categorical). Training is
full-batch gradient descent on the L2-penalized log loss, delegated to
the kernel backend (compiled or fallback, see riskmonitor._kernels).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels as kernels
from .errors import (
    ConstantFeature,
    CorruptArtifact,
    EmptyDataset,
    NonFinite,
    OutOfRange,
    SchemaHashMismatch,
    SchemaMismatch,
    SingleClass,
    UnlabeledData,
)
from .ingest import Dataset, PatientRecord
from .schema import CONTINUOUS, Schema, schema_fingerprint

DEFAULT_HYPER = (0.1, 500, 1e-3)  # (learning_rate, epochs, l2)

_ARTIFACT_FORMAT = "riskmonitor-model"
_ARTIFACT_VERSION = 1

_PROB_EPS = 1e-15  # keep predict_proba inside the open interval (0, 1)


class RiskLevel(str, Enum):
    LOW = "Low"
    MODERATE = "Moderate"
    HIGH = "High"


LEVEL_ORDER = {RiskLevel.LOW: 0, RiskLevel.MODERATE: 1, RiskLevel.HIGH: 2}


@dataclass(frozen=True)
class RiskPrediction:
    prob: float
    level: RiskLevel
    percent: float  # prob * 100, one decimal


@dataclass
class TrainedModel:
    weights: np.ndarray                       # log-odds units, encoded order
    intercept: float
    standardization: dict[str, tuple[float, float]]   # continuous -> (mean, std)
    encoding: dict[str, dict[str, int | None]]        # categorical -> label -> column (None = reference)
    columns: list[tuple[str, str | None]]              # encoded column order
    background_means: np.ndarray              # encoded-space training means
    metrics: tuple[float, float]              # (train_accuracy, test_accuracy)
    schema_hash: str
    data_bounds: dict[str, tuple[float, float]]        # [1st, 99th] pct of training data
    loss_curve: np.ndarray

    @property
    def feature_names(self) -> list[str]:
        return list(self.standardization) + list(self.encoding)

    def check_schema(self, schema: Schema) -> None:
        if schema_fingerprint(schema) != self.schema_hash:
            raise SchemaHashMismatch(
                "model was trained under a different feature schema")


def encoded_columns(schema: Schema) -> list[tuple[str, str | None]]:
    cols: list[tuple[str, str | None]] = []
    for spec in schema:
        if spec.kind == CONTINUOUS:
            cols.append((spec.name, None))
        else:
            for cat in spec.categories[1:]:
                cols.append((spec.name, cat))
    return cols


def encode_record(model: TrainedModel, record: PatientRecord) -> np.ndarray:
    """Standardize/one-hot a record into the model's column order."""
    expected = set(model.standardization) | set(model.encoding)
    if set(record.values) != expected:
        raise SchemaMismatch(
            f"record features {sorted(record.values)} do not match model features {sorted(expected)}")
    x = np.zeros(len(model.columns))
    col_index = {col: i for i, col in enumerate(model.columns)}
    for name, (mean, std) in model.standardization.items():
        v = record.values[name]
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            raise SchemaMismatch(f"{name}: expected finite number, got {v!r}")
        x[col_index[(name, None)]] = (v - mean) / std
    for name, catmap in model.encoding.items():
        label = record.values[name]
        if label not in catmap:
            raise SchemaMismatch(f"{name}: unknown category {label!r}")
        col = catmap[label]
        if col is not None:
            x[col] = 1.0
    return x


def _labels(dataset: Dataset) -> np.ndarray:
    if not dataset.records:
        raise EmptyDataset("no records")
    if any(r.label is None for r in dataset.records):
        raise UnlabeledData("every record needs a 0/1 label")
    return np.array([r.label for r in dataset.records], dtype=np.float64)


def _design_matrix(model: TrainedModel, records: list[PatientRecord]) -> np.ndarray:
    """Columnwise batch encoding; single records use encode_record."""
    X = np.zeros((len(records), len(model.columns)))
    col_index = {col: i for i, col in enumerate(model.columns)}
    try:
        for name, (mean, std) in model.standardization.items():
            raw = np.array([r.values[name] for r in records], dtype=np.float64)
            X[:, col_index[(name, None)]] = (raw - mean) / std
        for name, catmap in model.encoding.items():
            for i, rec in enumerate(records):
                label = rec.values[name]
                if label not in catmap:
                    raise SchemaMismatch(f"{name}: unknown category {label!r}")
                col = catmap[label]
                if col is not None:
                    X[i, col] = 1.0
    except (KeyError, ValueError, TypeError) as exc:
        raise SchemaMismatch(f"records do not fit the model's schema: {exc}") from exc
    return X


def fit(train: Dataset, test: Dataset, hyper: tuple[float, int, float] = DEFAULT_HYPER) -> TrainedModel:
    """Train on the train split, report accuracy on both splits.

    Deterministic for fixed hyperparameters and record order (weights
    start at zero; full-batch updates).
    """
    lr, epochs, l2 = hyper
    y_train = _labels(train)
    if len(set(y_train.tolist())) < 2:
        raise SingleClass("training split needs both outcome classes")
    schema = train.schema

    standardization: dict[str, tuple[float, float]] = {}
    data_bounds: dict[str, tuple[float, float]] = {}
    for spec in schema:
        if spec.kind != CONTINUOUS:
            continue
        col = np.array([r.values[spec.name] for r in train.records], dtype=np.float64)
        std = float(col.std())
        if std == 0.0:
            raise ConstantFeature(spec.name)
        standardization[spec.name] = (float(col.mean()), std)
        lo, hi = np.percentile(col, [1.0, 99.0])
        data_bounds[spec.name] = (float(lo), float(hi))

    encoding: dict[str, dict[str, int | None]] = {}
    columns = encoded_columns(schema)
    col_index = {col: i for i, col in enumerate(columns)}
    for spec in schema:
        if spec.kind == CONTINUOUS:
            continue
        catmap: dict[str, int | None] = {spec.categories[0]: None}
        for cat in spec.categories[1:]:
            catmap[cat] = col_index[(spec.name, cat)]
        encoding[spec.name] = catmap

    model = TrainedModel(
        weights=np.zeros(len(columns)),
        intercept=0.0,
        standardization=standardization,
        encoding=encoding,
        columns=columns,
        background_means=np.zeros(len(columns)),
        metrics=(0.0, 0.0),
        schema_hash=schema_fingerprint(schema),
        data_bounds=data_bounds,
        loss_curve=np.empty(0),
    )
    X = _design_matrix(model, train.records)
    w, b, losses = kernels.fit_logreg(X, y_train, lr, int(epochs), l2)
    if not (np.all(np.isfinite(w)) and math.isfinite(b) and np.all(np.isfinite(losses))):
        raise NonFinite("optimization diverged; lower the learning rate")
    model.weights = w
    model.intercept = float(b)
    model.background_means = X.mean(axis=0)
    model.loss_curve = losses
    model.metrics = (evaluate(model, train), evaluate(model, test))
    return model


def _sigmoid(z: np.ndarray) -> np.ndarray:
    return np.clip(1.0 / (1.0 + np.exp(-z)), _PROB_EPS, 1.0 - _PROB_EPS)


def predict_proba(model: TrainedModel, record: PatientRecord) -> float:
    """P(outcome=1); single records go through the same batch kernel."""
    x = encode_record(model, record).reshape(1, -1)
    z = kernels.batch_logits(x, model.weights, model.intercept)
    return float(_sigmoid(z)[0])


def predict_proba_records(model: TrainedModel, records: list[PatientRecord]) -> np.ndarray:
    if not records:
        return np.empty(0)
    z = kernels.batch_logits(_design_matrix(model, records), model.weights, model.intercept)
    return _sigmoid(z)


def bucket_risk(prob: float) -> RiskLevel:
    """High above 0.75, Low below 0.5, Moderate on and between the
    boundaries (both inclusive to Moderate)."""
    if not (isinstance(prob, (int, float)) and 0.0 <= prob <= 1.0):
        raise OutOfRange(f"probability must be in [0, 1], got {prob!r}")
    if prob > 0.75:
        return RiskLevel.HIGH
    if prob >= 0.5:
        return RiskLevel.MODERATE
    return RiskLevel.LOW


def risk_prediction(prob: float) -> RiskPrediction:
    return RiskPrediction(prob=prob, level=bucket_risk(prob), percent=round(prob * 100, 1))


def prediction_dict(pred: RiskPrediction) -> dict:
    return {"prob": pred.prob, "level": pred.level.value, "percent": pred.percent}


def evaluate(model: TrainedModel, data: Dataset) -> float:
    """Accuracy with prob >= 0.5 counted as a positive prediction."""
    y = _labels(data)
    probs = predict_proba_records(model, data.records)
    return float(np.mean((probs >= 0.5) == (y == 1.0)))


# --- persistence -----------------------------------------------------------

def save(model: TrainedModel) -> bytes:
    doc = {
        "format": _ARTIFACT_FORMAT,
        "version": _ARTIFACT_VERSION,
        "weights": model.weights.tolist(),
        "intercept": model.intercept,
        "standardization": {k: list(v) for k, v in model.standardization.items()},
        "encoding": model.encoding,
        "columns": [list(c) for c in model.columns],
        "background_means": model.background_means.tolist(),
        "metrics": list(model.metrics),
        "schema_hash": model.schema_hash,
        "data_bounds": {k: list(v) for k, v in model.data_bounds.items()},
        "loss_curve": model.loss_curve.tolist(),
    }
    return json.dumps(doc).encode("utf-8")


def load(data: bytes, schema: Schema | None = None) -> TrainedModel:
    try:
        doc = json.loads(data.decode("utf-8"))
        if doc.get("format") != _ARTIFACT_FORMAT or doc.get("version") != _ARTIFACT_VERSION:
            raise CorruptArtifact("not a riskmonitor model artifact")
        model = TrainedModel(
            weights=np.array(doc["weights"], dtype=np.float64),
            intercept=float(doc["intercept"]),
            standardization={k: (float(m), float(s)) for k, (m, s) in doc["standardization"].items()},
            encoding={f: {c: (None if i is None else int(i)) for c, i in m.items()}
                      for f, m in doc["encoding"].items()},
            columns=[(f, c) for f, c in doc["columns"]],
            background_means=np.array(doc["background_means"], dtype=np.float64),
            metrics=(float(doc["metrics"][0]), float(doc["metrics"][1])),
            schema_hash=doc["schema_hash"],
            data_bounds={k: (float(a), float(b)) for k, (a, b) in doc["data_bounds"].items()},
            loss_curve=np.array(doc["loss_curve"], dtype=np.float64),
        )
    except CorruptArtifact:
        raise
    except (ValueError, KeyError, TypeError, UnicodeDecodeError) as exc:
        raise CorruptArtifact(f"cannot parse model artifact: {exc}") from exc
    if len(model.weights) != len(model.columns):
        raise CorruptArtifact("weight vector does not match encoded columns")
    if schema is not None:
        model.check_schema(schema)
    return model
