"""Data-centric explanation payloads: patient overview with range
indicators, population distribution summaries, and risk history.

Everything here is computed from the records themselves; the model is
only consulted for probabilities. Population summaries use each
patient's most recent record so a patient never counts twice.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from enum import Enum

import numpy as np

from .errors import EmptyDataset, NoRecommendedRange, UnknownLabel
from .ingest import Dataset, PatientRecord
from .model import (
    RiskLevel,
    TrainedModel,
    bucket_risk,
    predict_proba_records,
    prediction_dict,
    risk_prediction,
)
from .schema import CONTINUOUS, FeatureSpec, Schema

HISTOGRAM_BINS = 12
_ORANGE_BAND = 0.10        # fraction of range width beyond a boundary
_DAYS_PER_MONTH = 30.4375  # mean Gregorian month, for slope units
_TREND_WINDOW = 6
_TREND_SLOPE = 0.01        # prob change per month


class RangeStatus(str, Enum):
    WITHIN = "within_range"
    OUTSIDE = "outside_range"


class Arrow(str, Enum):
    ABOVE = "above_range"
    BELOW = "below_range"
    NONE = "none"


class ZoneColor(str, Enum):
    GREEN = "green"
    ORANGE = "orange"
    RED = "red"


class Trend(str, Enum):
    IMPROVING = "improving"
    WORSENING = "worsening"
    STABLE = "stable"


@dataclass(frozen=True)
class RangeIndicator:
    feature: str
    value: float
    status: RangeStatus
    arrow: Arrow
    zone_color: ZoneColor


@dataclass(frozen=True)
class CategoryStatus:
    feature: str
    value: str
    status: RangeStatus
    zone_color: ZoneColor


@dataclass
class PopulationSummary:
    n: int
    continuous: dict[str, tuple[list[float], list[int]]]  # feature -> (bin_edges, counts)
    categorical: dict[str, dict[str, int]]                # feature -> label -> count


@dataclass
class RiskHistory:
    patient_id: str
    points: list[tuple[date, float, RiskLevel]]
    trend: Trend


def summarize_population(data: Dataset, schema: Schema) -> PopulationSummary:
    """Histogram (12 equal-width bins) per continuous feature and label
    counts per categorical feature, over each patient's latest record."""
    latest = list(data.latest_records().values())
    if not latest:
        raise EmptyDataset("population summary needs at least one record")
    continuous = {}
    categorical = {}
    for spec in schema:
        if spec.kind == CONTINUOUS:
            values = np.array([r.values[spec.name] for r in latest], dtype=np.float64)
            lo, hi = float(values.min()), float(values.max())
            if lo == hi:  # degenerate single-point domain
                lo, hi = lo - 0.5, hi + 0.5
            counts, edges = np.histogram(values, bins=np.linspace(lo, hi, HISTOGRAM_BINS + 1))
            continuous[spec.name] = (edges.tolist(), counts.tolist())
        else:
            counts = {c: 0 for c in spec.categories}
            for r in latest:
                counts[r.values[spec.name]] += 1
            categorical[spec.name] = counts
    return PopulationSummary(n=len(latest), continuous=continuous, categorical=categorical)


def range_indicator(value: float, spec: FeatureSpec) -> RangeIndicator:
    """Three-zone indicator: green inside the recommended range, orange
    within 10% of the range width beyond a boundary, red further out."""
    if spec.kind != CONTINUOUS or spec.recommended_range is None:
        raise NoRecommendedRange(f"{spec.name} has no recommended range")
    lo, hi = spec.recommended_range
    band = _ORANGE_BAND * (hi - lo) + 1e-12
    if value < lo:
        color = ZoneColor.ORANGE if lo - value <= band else ZoneColor.RED
        return RangeIndicator(spec.name, value, RangeStatus.OUTSIDE, Arrow.BELOW, color)
    if value > hi:
        color = ZoneColor.ORANGE if value - hi <= band else ZoneColor.RED
        return RangeIndicator(spec.name, value, RangeStatus.OUTSIDE, Arrow.ABOVE, color)
    return RangeIndicator(spec.name, value, RangeStatus.WITHIN, Arrow.NONE, ZoneColor.GREEN)


def categorical_status(label: str, spec: FeatureSpec) -> CategoryStatus:
    """Colored-text status for ordinal categoricals: green at the
    lowest-risk rank, orange one rank away, red otherwise."""
    if spec.ordinal_risk is None:
        raise ValueError(f"{spec.name} has no ordinal risk ranks")
    if label not in spec.categories:
        raise UnknownLabel(f"{spec.name}: unknown category {label!r}")
    gap = spec.best_rank() - spec.rank(label)
    if gap == 0:
        return CategoryStatus(spec.name, label, RangeStatus.WITHIN, ZoneColor.GREEN)
    color = ZoneColor.ORANGE if gap == 1 else ZoneColor.RED
    return CategoryStatus(spec.name, label, RangeStatus.OUTSIDE, color)


def _slope_per_month(months: np.ndarray, probs: np.ndarray) -> float:
    """Least-squares slope; 0 when underdetermined."""
    if len(months) < 2:
        return 0.0
    mx, my = months.mean(), probs.mean()
    denom = float(((months - mx) ** 2).sum())
    if denom == 0.0:
        return 0.0
    return float(((months - mx) * (probs - my)).sum() / denom)


def risk_history(records: list[PatientRecord], model: TrainedModel) -> RiskHistory:
    """Per-record risk over time plus a trend from the least-squares
    slope of the last 6 points (+/-0.01 prob/month deadband)."""
    if not records:
        raise EmptyDataset("risk history needs at least one record")
    pids = {r.patient_id for r in records}
    if len(pids) != 1:
        raise ValueError(f"records span multiple patients: {sorted(pids)}")
    ordered = sorted(records, key=lambda r: r.timestamp)
    probs = predict_proba_records(model, ordered)
    points = [(r.timestamp, float(p), bucket_risk(float(p))) for r, p in zip(ordered, probs)]

    window = points[-_TREND_WINDOW:]
    t0 = window[0][0]
    months = np.array([(t - t0).days / _DAYS_PER_MONTH for t, _, _ in window])
    slope = _slope_per_month(months, np.array([p for _, p, _ in window]))
    if slope < -_TREND_SLOPE:
        trend = Trend.IMPROVING
    elif slope > _TREND_SLOPE:
        trend = Trend.WORSENING
    else:
        trend = Trend.STABLE
    return RiskHistory(patient_id=ordered[0].patient_id, points=points, trend=trend)


# --- JSON payloads ----------------------------------------------------------

def patient_payload(record: PatientRecord, schema: Schema, model: TrainedModel) -> dict:
    """VC1: patient fields, risk prediction, range indicators. Indicators
    only cover actionable variables, matching the dashboard."""
    pred = risk_prediction(
        float(predict_proba_records(model, [record])[0]))
    indicators = []
    category_statuses = []
    for spec in schema:
        if not spec.actionable:
            continue
        if spec.kind == CONTINUOUS and spec.recommended_range is not None:
            ind = range_indicator(record.values[spec.name], spec)
            indicators.append({
                "feature": ind.feature,
                "value": ind.value,
                "status": ind.status.value,
                "arrow": ind.arrow.value,
                "zone_color": ind.zone_color.value,
            })
        elif spec.kind != CONTINUOUS and spec.ordinal_risk is not None:
            st = categorical_status(record.values[spec.name], spec)
            category_statuses.append({
                "feature": st.feature,
                "value": st.value,
                "status": st.status.value,
                "zone_color": st.zone_color.value,
            })
    return {
        "patient_id": record.patient_id,
        "timestamp": record.timestamp.isoformat(),
        "values": dict(record.values),
        "prediction": prediction_dict(pred),
        "indicators": indicators,
        "category_statuses": category_statuses,
    }


def population_payload(summary: PopulationSummary, schema: Schema,
                       marker_record: PatientRecord | None = None) -> dict:
    """VC2: distribution per feature plus recommended ranges; when a
    marker record is given its values are echoed for chart overlays."""
    features = []
    for spec in schema:
        entry: dict = {"name": spec.name, "kind": spec.kind, "actionable": spec.actionable}
        if spec.kind == CONTINUOUS:
            edges, counts = summary.continuous[spec.name]
            entry["histogram"] = {"bin_edges": edges, "counts": counts}
            if spec.unit:
                entry["unit"] = spec.unit
            if spec.recommended_range is not None:
                entry["recommended_range"] = list(spec.recommended_range)
            if spec.bounds is not None:
                entry["bounds"] = list(spec.bounds)  # dashboard input validation
        else:
            entry["counts"] = summary.categorical[spec.name]
        features.append(entry)
    payload = {"n": summary.n, "features": features}
    if marker_record is not None:
        payload["markers"] = dict(marker_record.values)
    return payload


def history_payload(history: RiskHistory) -> dict:
    """VC5: time-ordered risk points and the trend verdict."""
    return {
        "patient_id": history.patient_id,
        "points": [
            {"timestamp": t.isoformat(), "prob": p, "level": level.value}
            for t, p, level in history.points
        ],
        "trend": history.trend.value,
    }
