"""Counterfactual recommendations and what-if evaluation.

The search is a deterministic reimplementation of diverse counterfactual
generation under hard constraints: only actionable features move, every
proposed value stays inside the feature's search box (configured bounds,
else the [1st, 99th] percentile of training data), and results must land
at or below the requested risk level. Single-feature grid candidates are
tried first, then greedy multi-feature compositions; ranking prefers
fewest changes, then largest risk reduction, then easy over difficult.

Feasibility follows the two configured rules: a continuous change is
easy when it stays within +/-10% of the current value (boundary
inclusive); a categorical change is easy when it moves exactly one
ordinal risk rank.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

import math

import numpy as np

from .attributions import factors_payload
from .errors import (
    AlreadyAtTarget,
    BadValue,
    InvalidChange,
    MissingTemplate,
    NoCounterfactualFound,
    UnknownFeature,
    UnknownLabel,
    ZeroBaselineNoRange,
)
from .ingest import PatientRecord
from .model import (
    LEVEL_ORDER,
    RiskLevel,
    RiskPrediction,
    TrainedModel,
    bucket_risk,
    predict_proba,
    predict_proba_records,
    prediction_dict,
    risk_prediction,
)
from .schema import CATEGORICAL, CONTINUOUS, FeatureSpec, Schema, feature_map

GRID_POINTS = 21
_RATIO_SLACK = 1e-12  # keeps exact-10% decimal inputs on the easy side


class Feasibility(str, Enum):
    EASY = "easy"
    DIFFICULT = "difficult"


@dataclass(frozen=True)
class FeatureChange:
    feature: str
    from_value: object
    to_value: object


@dataclass(frozen=True)
class CounterfactualRecommendation:
    changes: tuple[FeatureChange, ...]
    prob_after: float
    risk_reduction: float
    feasibility: Feasibility
    text: str


def feasibility_continuous(current: float, proposed: float, spec: FeatureSpec) -> Feasibility:
    if spec.kind != CONTINUOUS:
        raise ValueError(f"{spec.name} is not continuous")
    if current == 0.0:
        if spec.recommended_range is None:
            raise ZeroBaselineNoRange(
                f"{spec.name}: current value is 0 and no recommended range is configured")
        denom = spec.recommended_range[1] - spec.recommended_range[0]
    else:
        denom = abs(current)
    ratio = abs(proposed - current) / denom
    return Feasibility.EASY if ratio <= 0.10 + _RATIO_SLACK else Feasibility.DIFFICULT


def feasibility_categorical(from_label: str, to_label: str, spec: FeatureSpec) -> Feasibility:
    if spec.ordinal_risk is None:
        raise ValueError(f"{spec.name} has no ordinal risk ranks")
    for label in (from_label, to_label):
        if label not in spec.categories:
            raise UnknownLabel(f"{spec.name}: unknown category {label!r}")
    step = abs(spec.rank(to_label) - spec.rank(from_label))
    return Feasibility.EASY if step == 1 else Feasibility.DIFFICULT


def change_feasibility(change: FeatureChange, spec: FeatureSpec) -> Feasibility:
    if spec.kind == CONTINUOUS:
        return feasibility_continuous(change.from_value, change.to_value, spec)
    return feasibility_categorical(change.from_value, change.to_value, spec)


def _combined_feasibility(changes, specs) -> Feasibility:
    for change in changes:
        if change_feasibility(change, specs[change.feature]) is Feasibility.DIFFICULT:
            return Feasibility.DIFFICULT
    return Feasibility.EASY


def apply_changes(record: PatientRecord, changes) -> PatientRecord:
    values = dict(record.values)
    for change in changes:
        values[change.feature] = change.to_value
    return replace(record, values=values, label=None)


def search_bounds(spec: FeatureSpec, model: TrainedModel) -> tuple[float, float]:
    """Configured bounds, else data-driven percentiles from training."""
    if spec.bounds is not None:
        return spec.bounds
    return model.data_bounds[spec.name]


def _validate_change(change: FeatureChange, specs: dict[str, FeatureSpec],
                     model: TrainedModel) -> None:
    spec = specs.get(change.feature)
    if spec is None:
        raise InvalidChange(f"unknown feature {change.feature!r}")
    if not spec.actionable:
        raise InvalidChange(f"{change.feature} is not actionable")
    if change.to_value == change.from_value:
        raise InvalidChange(f"{change.feature}: change has no effect")
    if spec.kind == CONTINUOUS:
        v = change.to_value
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            raise InvalidChange(f"{change.feature}: expected finite number, got {v!r}")
        lo, hi = search_bounds(spec, model)
        if not lo <= v <= hi:
            raise InvalidChange(f"{change.feature}: {v} outside bounds [{lo}, {hi}]")
    else:
        if change.to_value not in spec.categories:
            raise InvalidChange(f"{change.feature}: unknown category {change.to_value!r}")


def estimate_risk_reduction(model: TrainedModel, record: PatientRecord,
                            schema: Schema, changes) -> float:
    """Probability drop achieved by applying the changes (sensitivity)."""
    specs = feature_map(schema)
    for change in changes:
        _validate_change(change, specs, model)
    if not changes:
        return 0.0
    return predict_proba(model, record) - predict_proba(model, apply_changes(record, changes))


def apply_overrides(record: PatientRecord, schema: Schema, overrides: dict) -> PatientRecord:
    """Validated copy of the record with override values in place."""
    specs = feature_map(schema)
    values = dict(record.values)
    for name, v in overrides.items():
        spec = specs.get(name)
        if spec is None:
            raise UnknownFeature(f"unknown feature {name!r}")
        if spec.kind == CONTINUOUS:
            if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                raise BadValue(f"{name}: expected finite number, got {v!r}", feature=name)
            values[name] = float(v)
        else:
            if v not in spec.categories:
                raise BadValue(f"{name}: unknown category {v!r}", feature=name)
            values[name] = v
    return replace(record, values=values, label=None)


def what_if(model: TrainedModel, record: PatientRecord, schema: Schema,
            overrides: dict) -> RiskPrediction:
    """Re-predict under hypothetical values; exploration only, so any
    schema feature (also non-actionable) may be overridden and bounds are
    not enforced. The input record is never mutated."""
    return risk_prediction(predict_proba(model, apply_overrides(record, schema, overrides)))


def render_recommendation(change: FeatureChange, spec: FeatureSpec) -> str:
    if spec.name != change.feature:
        raise ValueError(f"spec {spec.name} does not match change {change.feature}")
    if spec.kind == CATEGORICAL:
        text = spec.templates.get(change.to_value)
        if text is None:
            raise MissingTemplate(spec.name, change.to_value)
        return text
    verb = "Reduce" if change.to_value < change.from_value else "Increase"
    unit = f" {spec.unit}" if spec.unit else ""
    return f"{verb} {spec.name} from {change.from_value:.1f} to {change.to_value:.1f}{unit}"


def _option_values(spec: FeatureSpec, current, model: TrainedModel) -> list:
    if spec.kind == CONTINUOUS:
        lo, hi = search_bounds(spec, model)
        return [float(g) for g in np.linspace(lo, hi, GRID_POINTS) if float(g) != current]
    return [c for c in spec.categories if c != current]


def _probs_for_options(model, record, feature, options) -> np.ndarray:
    candidates = [apply_changes(record, [FeatureChange(feature, record.values[feature], v)])
                  for v in options]
    return predict_proba_records(model, candidates)


def generate(model: TrainedModel, record: PatientRecord, schema: Schema,
             target: RiskLevel, k: int = 3, seed: int = 0) -> list[CounterfactualRecommendation]:
    """Up to k distinct recommendations that bring the record to the
    target level or better. Deterministic for a fixed seed (the seed only
    shuffles ranking ties for diversity)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    model.check_schema(schema)
    target = RiskLevel(target)
    specs = feature_map(schema)
    prob_before = predict_proba(model, record)
    current_level = bucket_risk(prob_before)
    if LEVEL_ORDER[current_level] <= LEVEL_ORDER[target]:
        raise AlreadyAtTarget(f"record is already at {current_level.value} risk")

    actionable = [f for f in schema if f.actionable]
    achieves = lambda p: LEVEL_ORDER[bucket_risk(p)] <= LEVEL_ORDER[target]

    candidates: list[tuple[tuple[FeatureChange, ...], float]] = []
    seen: set[frozenset] = set()

    def add(changes: tuple[FeatureChange, ...], prob_after: float) -> None:
        key = frozenset((c.feature, c.to_value) for c in changes)
        if key not in seen:
            seen.add(key)
            candidates.append((changes, prob_after))

    # one best single-feature candidate per actionable feature
    for spec in actionable:
        current = record.values[spec.name]
        options = _option_values(spec, current, model)
        if not options:
            continue
        probs = _probs_for_options(model, record, spec.name, options)
        hits = [(p, i) for i, p in enumerate(probs) if achieves(p)]
        if hits:
            p, i = min(hits)
            add((FeatureChange(spec.name, current, options[i]),), float(p))

    # greedy compositions, each seeded from a different first feature
    if len(candidates) < k:
        for first in actionable:
            _compose(model, record, actionable, first, achieves, add)

    if not candidates:
        raise NoCounterfactualFound(
            f"no actionable change within bounds reaches {target.value} risk")

    recs = []
    for changes, prob_after in candidates:
        recs.append(CounterfactualRecommendation(
            changes=changes,
            prob_after=prob_after,
            risk_reduction=prob_before - prob_after,
            feasibility=_combined_feasibility(changes, specs),
            text="; ".join(render_recommendation(c, specs[c.feature]) for c in changes),
        ))

    rng = np.random.default_rng(seed)
    recs = [recs[i] for i in rng.permutation(len(recs))]
    recs.sort(key=lambda r: (len(r.changes), -r.risk_reduction,
                             0 if r.feasibility is Feasibility.EASY else 1))
    return recs[:k]


def _compose(model, record, actionable, first, achieves, add) -> None:
    """Greedily stack feature changes, forcing the starting feature, until
    the target is reached or no move lowers the probability."""
    work = record
    changes: list[FeatureChange] = []
    used: set[str] = set()
    prob = predict_proba(model, record)

    order = [first] + [f for f in actionable if f.name != first.name]
    while True:
        best = None  # (prob, feature, option)
        pool = [order[0]] if not changes else [f for f in order if f.name not in used]
        for spec in pool:
            current = work.values[spec.name]
            options = _option_values(spec, current, model)
            if not options:
                continue
            probs = _probs_for_options(model, work, spec.name, options)
            i = int(np.argmin(probs))
            if best is None or probs[i] < best[0]:
                best = (float(probs[i]), spec, options[i])
        if best is None or best[0] >= prob:
            return  # dead end, no improving move left
        prob, spec, value = best
        changes.append(FeatureChange(spec.name, record.values[spec.name], value))
        used.add(spec.name)
        work = apply_changes(work, changes[-1:])
        if achieves(prob):
            if len(changes) > 1:  # singles were already enumerated exhaustively
                add(tuple(changes), prob)
            return
        if len(used) == len(actionable):
            return


def recommendations_payload(model: TrainedModel, record: PatientRecord, schema: Schema,
                            target: RiskLevel, k: int = 3, seed: int = 0) -> list[dict]:
    """VC4 JSON shape; field names are part of the API contract."""
    try:
        recs = generate(model, record, schema, target, k=k, seed=seed)
    except NoCounterfactualFound:
        return []
    return [
        {
            "text": r.text,
            "feasibility": r.feasibility.value,
            "risk_reduction_percent": round(r.risk_reduction * 100, 1),
            "changes": [
                {"feature": c.feature, "from": c.from_value, "to": c.to_value}
                for c in r.changes
            ],
        }
        for r in recs
    ]


def whatif_payload(model: TrainedModel, record: PatientRecord, schema: Schema,
                   overrides: dict) -> dict:
    """What-if response: new prediction plus refreshed risk factors."""
    hypothetical = apply_overrides(record, schema, overrides)
    pred = risk_prediction(predict_proba(model, hypothetical))
    return {
        "prediction": prediction_dict(pred),
        "factors": factors_payload(model, hypothetical, schema),
    }
