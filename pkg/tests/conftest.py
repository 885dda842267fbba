"""Shared fixtures: a small synthetic cohort with a fitted model, plus
helpers to hand-build models and records for closed-form checks."""

from datetime import date

import numpy as np
import pytest

import riskmonitor as rm
from riskmonitor.model import TrainedModel, encoded_columns
from riskmonitor.schema import CONTINUOUS, FeatureSpec, schema_fingerprint


@pytest.fixture(scope="session")
def schema():
    return rm.default_schema()


@pytest.fixture(scope="session")
def cohort(schema):
    """400 patients x 6 monthly records, deterministic."""
    return rm.gen_synthetic(400, 11, schema)


@pytest.fixture(scope="session")
def fitted(schema, cohort):
    train, test = rm.train_test_split(cohort, 0.2, 0)
    return rm.fit(train, test)


@pytest.fixture(scope="session")
def latest(cohort):
    return cohort.latest_records()


def make_record(values, pid="t1", ts=date(2024, 1, 15), label=None):
    return rm.PatientRecord(patient_id=pid, timestamp=ts, values=values, label=label)


def make_model(schema, weights, intercept=0.0, background=None,
               standardization=None, data_bounds=None):
    """TrainedModel straight from arrays; identity standardization unless
    given, zero background means unless given."""
    columns = encoded_columns(schema)
    weights = np.asarray(weights, dtype=np.float64)
    assert len(weights) == len(columns)
    if standardization is None:
        standardization = {f.name: (0.0, 1.0) for f in schema if f.kind == CONTINUOUS}
    encoding = {}
    col_index = {c: i for i, c in enumerate(columns)}
    for f in schema:
        if f.kind == CONTINUOUS:
            continue
        catmap = {f.categories[0]: None}
        for cat in f.categories[1:]:
            catmap[cat] = col_index[(f.name, cat)]
        encoding[f.name] = catmap
    if data_bounds is None:
        data_bounds = {f.name: (f.bounds if f.bounds else (-1e6, 1e6))
                       for f in schema if f.kind == CONTINUOUS}
    return TrainedModel(
        weights=weights,
        intercept=float(intercept),
        standardization=standardization,
        encoding=encoding,
        columns=columns,
        background_means=np.zeros(len(columns)) if background is None
        else np.asarray(background, dtype=np.float64),
        metrics=(0.0, 0.0),
        schema_hash=schema_fingerprint(schema),
        data_bounds=data_bounds,
        loss_curve=np.empty(0),
    )


def continuous_schema(n, bounds=(-5.0, 5.0), actionable=True):
    """n plain continuous features f0..f{n-1}."""
    return [FeatureSpec(name=f"f{i}", kind=CONTINUOUS, actionable=actionable, bounds=bounds)
            for i in range(n)]
