"""Per-feature contributions to one prediction, in log-odds space.

For a linear model with the training means as background, the Shapley
value of each encoded feature has the closed form w_i * (x_i - mu_i).
`linear_shap` implements that; `brute_shapley` is the independent
full-enumeration oracle used to verify it. `important_risk_factors`
folds one-hot contributions back to human-level features and keeps only
the actionable ones, matching what the dashboard shows.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import factorial

import numpy as np

from .errors import NoActionableFeatures, TooManyFeatures
from .ingest import PatientRecord
from .model import TrainedModel, encode_record
from .schema import CONTINUOUS, FeatureSpec, Schema

ENUMERATION_LIMIT = 12


class Direction(str, Enum):
    INCREASES_RISK = "increases_risk"
    DECREASES_RISK = "decreases_risk"


@dataclass(frozen=True)
class Attribution:
    feature: str
    phi: float                      # signed, log-odds units
    percent_share: float            # |phi| / sum over actionable |phi| * 100
    direction: Direction
    in_recommended_range: bool | None = None
    note: str | None = None


def _column_label(col: tuple[str, str | None]) -> str:
    feature, category = col
    return feature if category is None else f"{feature}={category}"


def linear_shap(model: TrainedModel, record: PatientRecord) -> list[tuple[str, float]]:
    """Exact Shapley values via the linear closed form.

    Efficiency holds by construction: the phis sum to
    logit(record) - logit(background means).
    """
    x = encode_record(model, record)
    phi = model.weights * (x - model.background_means)
    return [(_column_label(col), float(p)) for col, p in zip(model.columns, phi)]


def brute_shapley(model: TrainedModel, record: PatientRecord) -> list[tuple[str, float]]:
    """Shapley values by full coalition enumeration (test oracle).

    The value function is the link-space prediction with absent features
    held at the background means. Exponential in the encoded dimension,
    hence the hard cap.
    """
    x = encode_record(model, record)
    d = len(x)
    if d > ENUMERATION_LIMIT:
        raise TooManyFeatures(f"{d} encoded features exceeds the enumeration bound of {ENUMERATION_LIMIT}")
    w = np.asarray(model.weights, dtype=np.float64)
    mu = np.asarray(model.background_means, dtype=np.float64)

    masks = np.arange(1 << d)
    membership = ((masks[:, None] >> np.arange(d)) & 1).astype(np.float64)  # (2^d, d)
    values = model.intercept + membership @ (w * x) + (1.0 - membership) @ (w * mu)
    sizes = membership.sum(axis=1).astype(int)
    coalition_weight = np.array(
        [factorial(s) * factorial(d - s - 1) / factorial(d) for s in range(d)])

    phi = np.empty(d)
    for i in range(d):
        without_i = membership[:, i] == 0
        base = masks[without_i]
        phi[i] = np.sum(coalition_weight[sizes[without_i]] * (values[base | (1 << i)] - values[base]))
    return [(_column_label(col), float(p)) for col, p in zip(model.columns, phi)]


def _range_note(spec: FeatureSpec, value: float) -> tuple[bool, str]:
    lo, hi = spec.recommended_range
    unit = f" {spec.unit}" if spec.unit else ""
    if value < lo:
        return False, f"{value:.1f}{unit} is below the recommended range {lo:g}-{hi:g}"
    if value > hi:
        return False, f"{value:.1f}{unit} is above the recommended range {lo:g}-{hi:g}"
    return True, f"{value:.1f}{unit} is within the recommended range {lo:g}-{hi:g}"


def important_risk_factors(model: TrainedModel, record: PatientRecord,
                           schema: Schema) -> list[Attribution]:
    """Actionable-feature attributions, largest impact first.

    One-hot phis are summed back to their original feature so the list
    has one row per human-level variable. phi > 0 reads as increasing
    risk; phi = 0 counts as decreasing (no third visual state).
    """
    model.check_schema(schema)
    actionable = [f for f in schema if f.actionable]
    if not actionable:
        raise NoActionableFeatures("schema declares no actionable features")

    x = encode_record(model, record)
    phi = model.weights * (x - model.background_means)
    per_feature: dict[str, float] = {}
    for (feature, _), p in zip(model.columns, phi):
        per_feature[feature] = per_feature.get(feature, 0.0) + float(p)

    order = {f.name: i for i, f in enumerate(schema)}
    rows = sorted(((f, per_feature.get(f.name, 0.0)) for f in actionable),
                  key=lambda t: (-abs(t[1]), order[t[0].name]))
    total = sum(abs(p) for _, p in rows)

    out = []
    for spec, p in rows:
        in_range, note = (None, None)
        if spec.kind == CONTINUOUS and spec.recommended_range is not None:
            in_range, note = _range_note(spec, record.values[spec.name])
        out.append(Attribution(
            feature=spec.name,
            phi=p,
            percent_share=(abs(p) / total * 100.0) if total > 0 else 0.0,
            direction=Direction.INCREASES_RISK if p > 0 else Direction.DECREASES_RISK,
            in_recommended_range=in_range,
            note=note,
        ))
    return out


def factors_payload(model: TrainedModel, record: PatientRecord, schema: Schema) -> list[dict]:
    """VC3 JSON shape; field names are part of the API contract."""
    return [
        {
            "feature": a.feature,
            "percent_share": a.percent_share,
            "direction": a.direction.value,
            "in_recommended_range": a.in_recommended_range,
            "note": a.note,
        }
        for a in important_risk_factors(model, record, schema)
    ]
