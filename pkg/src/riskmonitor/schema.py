"""Feature schema: the expert-configured description of every model input.

A schema is a JSON list of feature objects. Field names are fixed:

    name, kind, actionable, unit, recommended_range, categories,
    ordinal_risk, bounds, templates

`kind` is "continuous" or "categorical". Actionability, recommended
ranges, search bounds, ordinal risk ranks and recommendation templates
are configuration, never inferred from data.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from importlib import resources

from .errors import SchemaError

CONTINUOUS = "continuous"
CATEGORICAL = "categorical"


@dataclass(frozen=True)
class FeatureSpec:
    name: str
    kind: str
    actionable: bool
    unit: str | None = None
    recommended_range: tuple[float, float] | None = None
    categories: tuple[str, ...] | None = None
    ordinal_risk: dict[str, int] | None = None
    bounds: tuple[float, float] | None = None
    templates: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in (CONTINUOUS, CATEGORICAL):
            raise SchemaError(f"{self.name}: kind must be continuous or categorical")
        if self.kind == CONTINUOUS:
            self._check_continuous()
        else:
            self._check_categorical()
        if not self.actionable and (self.templates or self.ordinal_risk):
            raise SchemaError(
                f"{self.name}: templates/ordinal_risk only allowed on actionable features"
            )

    def _check_continuous(self):
        if self.categories is not None or self.ordinal_risk is not None:
            raise SchemaError(f"{self.name}: categories/ordinal_risk invalid on continuous feature")
        if self.recommended_range is not None:
            lo, hi = self.recommended_range
            if not lo < hi:
                raise SchemaError(f"{self.name}: recommended_range low must be < high")
        if self.bounds is not None:
            blo, bhi = self.bounds
            if not blo < bhi:
                raise SchemaError(f"{self.name}: bounds min must be < max")
            if self.recommended_range is not None:
                lo, hi = self.recommended_range
                if blo > lo or bhi < hi:
                    raise SchemaError(f"{self.name}: bounds must enclose recommended_range")
        if self.templates:
            raise SchemaError(f"{self.name}: templates only apply to categorical features")

    def _check_categorical(self):
        if not self.categories:
            raise SchemaError(f"{self.name}: categorical feature needs categories")
        if len(set(self.categories)) != len(self.categories):
            raise SchemaError(f"{self.name}: duplicate category labels")
        if self.unit is not None or self.recommended_range is not None or self.bounds is not None:
            raise SchemaError(f"{self.name}: unit/recommended_range/bounds invalid on categorical feature")
        if self.actionable:
            if self.ordinal_risk is None:
                raise SchemaError(f"{self.name}: actionable categorical feature needs ordinal_risk")
            if set(self.ordinal_risk) != set(self.categories):
                raise SchemaError(f"{self.name}: ordinal_risk must cover exactly the categories")
            ranks = sorted(self.ordinal_risk.values())
            if ranks != list(range(1, len(self.categories) + 1)):
                raise SchemaError(f"{self.name}: ordinal ranks must be 1..{len(self.categories)} consecutive")
            for label in self.templates:
                if label not in self.categories:
                    raise SchemaError(f"{self.name}: template for unknown category {label!r}")

    # ordinal_risk assigns rank 1 to the riskiest label; the largest rank
    # is the least risky one ("best").
    def rank(self, label: str) -> int:
        return self.ordinal_risk[label]

    def best_rank(self) -> int:
        return max(self.ordinal_risk.values())


Schema = list[FeatureSpec]


def validate_schema(schema: Schema) -> Schema:
    if not schema:
        raise SchemaError("schema has no features")
    names = [f.name for f in schema]
    if len(set(names)) != len(names):
        raise SchemaError("duplicate feature names in schema")
    return schema


def feature_map(schema: Schema) -> dict[str, FeatureSpec]:
    return {f.name: f for f in schema}


def _spec_to_dict(spec: FeatureSpec) -> dict:
    d: dict = {"name": spec.name, "kind": spec.kind, "actionable": spec.actionable}
    if spec.unit is not None:
        d["unit"] = spec.unit
    if spec.recommended_range is not None:
        d["recommended_range"] = list(spec.recommended_range)
    if spec.categories is not None:
        d["categories"] = list(spec.categories)
    if spec.ordinal_risk is not None:
        d["ordinal_risk"] = dict(spec.ordinal_risk)
    if spec.bounds is not None:
        d["bounds"] = list(spec.bounds)
    if spec.templates:
        d["templates"] = dict(spec.templates)
    return d


def _spec_from_dict(d: dict) -> FeatureSpec:
    known = {"name", "kind", "actionable", "unit", "recommended_range",
             "categories", "ordinal_risk", "bounds", "templates"}
    unknown = set(d) - known
    if unknown:
        raise SchemaError(f"unknown schema fields: {sorted(unknown)}")
    try:
        return FeatureSpec(
            name=d["name"],
            kind=d["kind"],
            actionable=bool(d["actionable"]),
            unit=d.get("unit"),
            recommended_range=tuple(d["recommended_range"]) if "recommended_range" in d else None,
            categories=tuple(d["categories"]) if "categories" in d else None,
            ordinal_risk={k: int(v) for k, v in d["ordinal_risk"].items()} if "ordinal_risk" in d else None,
            bounds=tuple(d["bounds"]) if "bounds" in d else None,
            templates=dict(d.get("templates", {})),
        )
    except KeyError as exc:
        raise SchemaError(f"schema entry missing field {exc}") from exc


def load_schema(path) -> Schema:
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, list):
        raise SchemaError("schema file must contain a JSON list of features")
    return validate_schema([_spec_from_dict(d) for d in raw])


def save_schema(schema: Schema, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump([_spec_to_dict(f) for f in schema], fh, indent=2)
        fh.write("\n")


def schema_fingerprint(schema: Schema) -> str:
    """Stable hash over the canonical JSON form, used to pin a trained
    model to the exact schema it was fitted under."""
    canon = json.dumps([_spec_to_dict(f) for f in schema], sort_keys=True)
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()[:16]


def default_schema() -> Schema:
    """The packaged 8-feature demo schema (synthetic stand-in, see README)."""
    ref = resources.files("riskmonitor").joinpath("data/default_schema.json")
    with resources.as_file(ref) as path:
        return load_schema(path)
