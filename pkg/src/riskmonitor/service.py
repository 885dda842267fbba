"""HTTP/JSON API over the explanation engine.

All reads are pure functions of an immutable AppState snapshot, so the
app is safe under concurrent requests; swapping data or model means
rebuilding the snapshot (service restart). What-if is stateless: the
overrides travel in the request and nothing is persisted.

Errors use one envelope: {"code", "message", "detail"}.
"""

from __future__ import annotations

from dataclasses import dataclass

from fastapi import Body, FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import counterfactual, datacentric
from .attributions import factors_payload
from .errors import (
    AlreadyAtTarget,
    BadValue,
    RiskMonitorError,
    UnknownFeature,
)
from .ingest import Dataset, PatientRecord
from .model import RiskLevel, TrainedModel, risk_prediction, predict_proba_records
from .schema import Schema


@dataclass(frozen=True)
class AppState:
    schema: Schema
    model: TrainedModel
    dataset: Dataset
    summary: datacentric.PopulationSummary
    latest: dict[str, PatientRecord]
    patient_list: list[dict]

    @classmethod
    def build(cls, schema: Schema, model: TrainedModel, dataset: Dataset) -> "AppState":
        model.check_schema(schema)
        summary = datacentric.summarize_population(dataset, schema)
        latest = dataset.latest_records()
        ids = dataset.patient_ids()
        probs = predict_proba_records(model, [latest[p] for p in ids])
        patient_list = []
        for pid, prob in zip(ids, probs):
            pred = risk_prediction(float(prob))
            patient_list.append(
                {"patient_id": pid, "level": pred.level.value, "percent": pred.percent})
        return cls(schema=schema, model=model, dataset=dataset,
                   summary=summary, latest=latest, patient_list=patient_list)


def _error(status: int, code: str, message: str, detail=None) -> JSONResponse:
    return JSONResponse(status_code=status,
                        content={"code": code, "message": message, "detail": detail})


def _not_found(pid: str) -> JSONResponse:
    return _error(404, "unknown_patient", f"no patient {pid!r}")


def create_app(state: AppState, cors: str | None = None) -> FastAPI:
    app = FastAPI(title="riskmonitor", docs_url=None, redoc_url=None)
    if cors:
        app.add_middleware(
            CORSMiddleware, allow_origins=[cors],
            allow_methods=["*"], allow_headers=["*"])

    @app.get("/api/patients")
    def patients():
        return state.patient_list

    @app.get("/api/patients/{pid}")
    def patient(pid: str):
        rec = state.latest.get(pid)
        if rec is None:
            return _not_found(pid)
        return datacentric.patient_payload(rec, state.schema, state.model)

    @app.get("/api/patients/{pid}/factors")
    def factors(pid: str):
        rec = state.latest.get(pid)
        if rec is None:
            return _not_found(pid)
        return factors_payload(state.model, rec, state.schema)

    @app.get("/api/patients/{pid}/recommendations")
    def recommendations(pid: str, target: str = "low", k: int = 3, seed: int = 0):
        rec = state.latest.get(pid)
        if rec is None:
            return _not_found(pid)
        try:
            level = RiskLevel(target.capitalize())
        except ValueError:
            return _error(422, "invalid_target", f"target must be low/moderate/high, got {target!r}")
        if k < 1:
            return _error(422, "invalid_k", "k must be >= 1")
        try:
            return counterfactual.recommendations_payload(
                state.model, rec, state.schema, level, k=k, seed=seed)
        except AlreadyAtTarget as exc:
            return _error(409, "already_at_target", str(exc))

    @app.get("/api/patients/{pid}/history")
    def history(pid: str):
        rec = state.latest.get(pid)
        if rec is None:
            return _not_found(pid)
        series = datacentric.risk_history(state.dataset.records_for(pid), state.model)
        return datacentric.history_payload(series)

    @app.get("/api/population/summary")
    def population(patient_id: str | None = None):
        marker = None
        if patient_id is not None:
            marker = state.latest.get(patient_id)
            if marker is None:
                return _not_found(patient_id)
        return datacentric.population_payload(state.summary, state.schema, marker)

    @app.post("/api/patients/{pid}/whatif")
    def whatif(pid: str, payload: dict = Body(...)):
        rec = state.latest.get(pid)
        if rec is None:
            return _not_found(pid)
        overrides = payload.get("overrides")
        if not isinstance(overrides, dict):
            return _error(422, "invalid_body", 'body must be {"overrides": {feature: value}}')
        try:
            return counterfactual.whatif_payload(state.model, rec, state.schema, overrides)
        except (UnknownFeature, BadValue) as exc:
            return _error(422, "invalid_override", str(exc))

    @app.exception_handler(RiskMonitorError)
    def on_engine_error(_, exc: RiskMonitorError):  # pragma: no cover - safety net
        return _error(500, "engine_error", str(exc))

    return app
