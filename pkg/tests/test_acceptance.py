"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line (run with `pytest tests/test_acceptance.py -v -s`).

Criteria covered:
  A1 risk bucketing thresholds, verbatim values
  A2 closed-form Shapley == brute-force enumeration + efficiency (1e-9)
  A3 counterfactual validity on 100+ high-risk synthetic patients
  A4 model regression on the pinned synthetic cohort (acc >= 0.90)
  A5 what-if monotonicity and fixed-point
  A6 API payloads == direct module calls, plus 404/422 mapping
"""

import functools
import json
import time

import numpy as np
import pytest
from fastapi.testclient import TestClient

import riskmonitor as rm
from riskmonitor.attributions import factors_payload
from riskmonitor.counterfactual import recommendations_payload, whatif_payload
from riskmonitor.datacentric import history_payload, patient_payload, population_payload, summarize_population
from riskmonitor.errors import NoCounterfactualFound
from riskmonitor.model import RiskLevel, encode_record
from riskmonitor.service import AppState, create_app

from conftest import continuous_schema, make_model, make_record

PINNED_TEST_ACCURACY = 0.92025   # observed once from the oracle run, seed 7
PINNED_ACCURACY_TOL = 0.02


def criterion(name):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"\nACCEPTANCE {name}: FAIL")
                raise
            print(f"\nACCEPTANCE {name}: PASS")
        return wrapper
    return deco


@criterion("risk-bucketing")
def test_a1_risk_bucketing():
    assert rm.bucket_risk(0.80) is RiskLevel.HIGH
    assert rm.bucket_risk(0.75) is RiskLevel.MODERATE
    assert rm.bucket_risk(0.50) is RiskLevel.MODERATE
    assert rm.bucket_risk(0.49) is RiskLevel.LOW


@criterion("shapley-oracle-equivalence")
def test_a2_shapley_oracle_equivalence(fitted, cohort):
    start = time.time()
    rng = np.random.default_rng(2024)

    # 180 random continuous models across every dimension up to the bound
    for trial in range(180):
        d = int(rng.integers(1, 13))
        schema = continuous_schema(d)
        model = make_model(
            schema,
            rng.normal(scale=2.0, size=d),
            intercept=float(rng.normal()),
            background=rng.normal(size=d),
            standardization={f"f{i}": (float(rng.normal()), float(rng.uniform(0.5, 3.0)))
                             for i in range(d)},
        )
        rec = make_record({f"f{i}": float(rng.normal(scale=3.0)) for i in range(d)})
        fast = rm.linear_shap(model, rec)
        brute = rm.brute_shapley(model, rec)
        for (na, pa), (nb, pb) in zip(fast, brute):
            assert na == nb
            assert abs(pa - pb) <= 1e-9
        x = encode_record(model, rec)
        logit_gap = float(model.weights @ (x - model.background_means))
        assert abs(sum(p for _, p in fast) - logit_gap) <= 1e-9

    # 20 records through the fitted mixed-schema model (11 encoded features)
    for rec in cohort.records[:20]:
        fast = rm.linear_shap(fitted, rec)
        brute = rm.brute_shapley(fitted, rec)
        for (_, pa), (_, pb) in zip(fast, brute):
            assert abs(pa - pb) <= 1e-9

    assert time.time() - start < 10.0


@criterion("counterfactual-validity")
def test_a3_counterfactual_validity(fitted, schema, latest):
    start = time.time()
    specs = {f.name: f for f in schema}
    actionable = {f.name for f in schema if f.actionable}

    high = {pid: rec for pid, rec in latest.items()
            if rm.predict_proba(fitted, rec) > 0.75}
    assert len(high) >= 100

    n_recs = 0
    for pid, rec in high.items():
        prob_before = rm.predict_proba(fitted, rec)
        try:
            recs = rm.generate(fitted, rec, schema, RiskLevel.LOW, k=3, seed=0)
        except NoCounterfactualFound:
            continue
        for r in recs:
            n_recs += 1
            seen = set()
            for c in r.changes:
                assert c.feature in actionable
                assert c.feature not in seen  # each feature moved at most once
                seen.add(c.feature)
                spec = specs[c.feature]
                if spec.kind == "continuous":
                    lo, hi = spec.bounds
                    assert lo <= c.to_value <= hi
                else:
                    assert c.to_value in spec.categories
                assert c.from_value == rec.values[c.feature]
                assert c.to_value != c.from_value
            # independent re-prediction of the modified record
            modified = rm.PatientRecord(
                patient_id=rec.patient_id, timestamp=rec.timestamp,
                values={**rec.values, **{c.feature: c.to_value for c in r.changes}})
            re_prob = rm.predict_proba(fitted, modified)
            assert re_prob < 0.5
            assert re_prob == pytest.approx(r.prob_after, abs=1e-12)
            assert r.risk_reduction > 0
            assert r.risk_reduction == pytest.approx(prob_before - re_prob, abs=1e-12)
            # feasibility label re-derived from the two rules
            labels = []
            for c in r.changes:
                spec = specs[c.feature]
                if spec.kind == "continuous":
                    labels.append(rm.feasibility_continuous(c.from_value, c.to_value, spec))
                else:
                    labels.append(rm.feasibility_categorical(c.from_value, c.to_value, spec))
            expected = ("difficult" if any(l.value == "difficult" for l in labels) else "easy")
            assert r.feasibility.value == expected
    assert n_recs >= 100

    # the feasibility tables themselves, inclusive boundary included
    glucose = specs["glucose"]
    activity = specs["activity"]
    assert rm.feasibility_continuous(100.0, 110.0, glucose).value == "easy"
    assert rm.feasibility_continuous(100.0, 105.0, glucose).value == "easy"
    assert rm.feasibility_continuous(100.0, 111.0, glucose).value == "difficult"
    assert rm.feasibility_categorical("low", "moderate", activity).value == "easy"
    assert rm.feasibility_categorical("moderate", "high", activity).value == "easy"
    assert rm.feasibility_categorical("low", "high", activity).value == "difficult"

    assert time.time() - start < 30.0


@criterion("model-regression")
def test_a4_model_regression(schema):
    dataset = rm.gen_synthetic(10000, 7, schema)
    train, test = rm.train_test_split(dataset, 0.2, 7)
    start = time.time()
    model = rm.fit(train, test)
    train_seconds = time.time() - start
    _, test_acc = model.metrics
    assert test_acc >= 0.90
    assert abs(test_acc - PINNED_TEST_ACCURACY) <= PINNED_ACCURACY_TOL
    assert train_seconds < 5.0


@criterion("whatif-monotonicity")
def test_a5_whatif_monotonicity(fitted, schema, latest):
    rec = latest["p010"]
    glucose_col = fitted.columns.index(("glucose", None))
    assert fitted.weights[glucose_col] > 0  # positive-weight continuous feature

    baseline = rm.predict_proba(fitted, rec)
    assert rm.what_if(fitted, rec, schema, {}).prob == baseline  # exact fixed point

    rng = np.random.default_rng(77)
    lo, hi = 3.0, 15.0
    values = np.sort(rng.uniform(lo, hi, size=100))
    probs = [rm.what_if(fitted, rec, schema, {"glucose": float(v)}).prob for v in values]
    assert all(b >= a for a, b in zip(probs, probs[1:]))


@criterion("api-core-equivalence")
def test_a6_api_core_equivalence(schema, fitted, cohort, latest):
    state = AppState.build(schema, fitted, cohort)
    client = TestClient(create_app(state))
    wire = lambda payload: json.loads(json.dumps(payload))

    assert client.get("/api/patients").json() == state.patient_list

    pid_high = next(p for p, r in sorted(latest.items())
                    if rm.predict_proba(fitted, r) > 0.75)
    pid_low = next(p for p, r in sorted(latest.items())
                   if rm.predict_proba(fitted, r) < 0.5)

    for pid in (pid_high, pid_low):
        rec = latest[pid]
        assert client.get(f"/api/patients/{pid}").json() == \
            wire(patient_payload(rec, schema, fitted))
        assert client.get(f"/api/patients/{pid}/factors").json() == \
            wire(factors_payload(fitted, rec, schema))
        hist = rm.risk_history(cohort.records_for(pid), fitted)
        assert client.get(f"/api/patients/{pid}/history").json() == \
            wire(history_payload(hist))

    assert client.get(f"/api/patients/{pid_high}/recommendations?target=low&k=3").json() == \
        wire(recommendations_payload(fitted, latest[pid_high], schema, RiskLevel.LOW, k=3, seed=0))

    summary = summarize_population(cohort, schema)
    assert client.get("/api/population/summary").json() == \
        wire(population_payload(summary, schema))

    overrides = {"glucose": 5.1}
    assert client.post(f"/api/patients/{pid_high}/whatif",
                       json={"overrides": overrides}).json() == \
        wire(whatif_payload(fitted, latest[pid_high], schema, overrides))

    assert client.get("/api/patients/does-not-exist").status_code == 404
    assert client.post(f"/api/patients/{pid_high}/whatif",
                       json={"overrides": {"glucose": "abc"}}).status_code == 422
