"""Dataset loading, validation and synthetic generation.

CSV format: header ``patient_id,timestamp,label,<feature names in schema
order>``, UTF-8, "." decimal separator. Labels may be blank (unlabeled
rows). Missing values are rejected, never imputed.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from datetime import date

import numpy as np

from .errors import BadValue, EmptyDataset, MissingColumn, SchemaError
from .schema import CATEGORICAL, CONTINUOUS, FeatureSpec, Schema, validate_schema

_META_COLUMNS = ("patient_id", "timestamp", "label")


@dataclass(frozen=True)
class PatientRecord:
    patient_id: str
    timestamp: date
    values: dict
    label: int | None = None


@dataclass
class Dataset:
    schema: Schema
    records: list[PatientRecord] = field(default_factory=list)

    def validate(self) -> "Dataset":
        validate_schema(self.schema)
        seen = set()
        for i, rec in enumerate(self.records):
            validate_record(rec, self.schema, row=i)
            key = (rec.patient_id, rec.timestamp)
            if key in seen:
                raise BadValue(f"duplicate patient_id+timestamp {key}", row=i)
            seen.add(key)
        return self

    def patient_ids(self) -> list[str]:
        out, seen = [], set()
        for rec in self.records:
            if rec.patient_id not in seen:
                seen.add(rec.patient_id)
                out.append(rec.patient_id)
        return out

    def records_for(self, patient_id: str) -> list[PatientRecord]:
        recs = [r for r in self.records if r.patient_id == patient_id]
        return sorted(recs, key=lambda r: r.timestamp)

    def latest_records(self) -> dict[str, PatientRecord]:
        """Most recent record per patient."""
        latest: dict[str, PatientRecord] = {}
        for rec in self.records:
            cur = latest.get(rec.patient_id)
            if cur is None or rec.timestamp > cur.timestamp:
                latest[rec.patient_id] = rec
        return latest


def validate_record(rec: PatientRecord, schema: Schema, row: int | None = None) -> None:
    names = {f.name for f in schema}
    if set(rec.values) != names:
        missing = names - set(rec.values)
        extra = set(rec.values) - names
        raise BadValue(
            f"record values must cover exactly the schema features "
            f"(missing={sorted(missing)}, extra={sorted(extra)})", row=row)
    for spec in schema:
        v = rec.values[spec.name]
        if spec.kind == CONTINUOUS:
            if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                raise BadValue(f"{spec.name}: expected finite number, got {v!r}",
                               row=row, feature=spec.name)
        else:
            if v not in spec.categories:
                raise BadValue(f"{spec.name}: unknown category {v!r}", row=row, feature=spec.name)
    if rec.label is not None and rec.label not in (0, 1):
        raise BadValue(f"label must be 0 or 1, got {rec.label!r}", row=row)


def load_csv(path, schema: Schema) -> Dataset:
    validate_schema(schema)
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyDataset(f"{path}: file is empty") from None
        expected = list(_META_COLUMNS) + [f.name for f in schema]
        for col in expected:
            if col not in header:
                raise MissingColumn(col)
        for col in header:
            if col not in expected:
                raise SchemaError(f"unexpected CSV column {col!r}")
        idx = {col: header.index(col) for col in expected}

        records = []
        specs = {f.name: f for f in schema}
        for rownum, row in enumerate(reader):
            if len(row) != len(header):
                raise BadValue(f"expected {len(header)} cells, got {len(row)}", row=rownum)
            raw_label = row[idx["label"]].strip()
            label = _parse_label(raw_label, rownum)
            values = {}
            for name, spec in specs.items():
                values[name] = _parse_value(row[idx[name]], spec, rownum)
            try:
                ts = date.fromisoformat(row[idx["timestamp"]].strip())
            except ValueError:
                raise BadValue(f"bad timestamp {row[idx['timestamp']]!r}", row=rownum) from None
            records.append(PatientRecord(
                patient_id=row[idx["patient_id"]].strip(),
                timestamp=ts, values=values, label=label))
    if not records:
        raise EmptyDataset(f"{path}: no data rows")
    return Dataset(schema=schema, records=records).validate()


def _parse_label(raw: str, rownum: int) -> int | None:
    if raw == "":
        return None
    if raw in ("0", "1"):
        return int(raw)
    raise BadValue(f"label must be 0, 1 or blank, got {raw!r}", row=rownum)


def _parse_value(raw: str, spec: FeatureSpec, rownum: int):
    raw = raw.strip()
    if raw == "":
        raise BadValue(f"{spec.name}: missing value", row=rownum, feature=spec.name)
    if spec.kind == CONTINUOUS:
        try:
            v = float(raw)
        except ValueError:
            raise BadValue(f"{spec.name}: unparseable number {raw!r}",
                           row=rownum, feature=spec.name) from None
        if not math.isfinite(v):
            raise BadValue(f"{spec.name}: non-finite value {raw!r}", row=rownum, feature=spec.name)
        return v
    if raw not in spec.categories:
        raise BadValue(f"{spec.name}: unknown category {raw!r}", row=rownum, feature=spec.name)
    return raw


def write_csv(dataset: Dataset, path) -> None:
    header = list(_META_COLUMNS) + [f.name for f in dataset.schema]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for rec in dataset.records:
            row = [rec.patient_id, rec.timestamp.isoformat(),
                   "" if rec.label is None else str(rec.label)]
            for spec in dataset.schema:
                v = rec.values[spec.name]
                row.append(str(v) if spec.kind == CONTINUOUS else v)
            writer.writerow(row)


# --- synthetic data --------------------------------------------------------
#
# Stand-in for a private clinical dataset. Labels come from a planted
# linear-logit rule over the generated values, so a correctly fitted
# logistic model can recover the rule and model-level tests have ground
# truth. Each patient gets 6 monthly records with slowly drifting values
# to feed the risk-history view.

_MONTHS = 6
_CONT_WEIGHTS = (7.2, 4.8, 3.2, 2.2, 1.8, 1.4)     # per continuous feature, schema order
_ORDINAL_SLOPES = (2.8, 2.0, 1.4, 1.0)             # per actionable categorical, schema order


def _cont_params(spec: FeatureSpec) -> tuple[float, float]:
    """Population mean/sd for one continuous feature, from its config."""
    if spec.recommended_range is not None:
        lo, hi = spec.recommended_range
        mid, width = (lo + hi) / 2.0, hi - lo
        return mid + 0.3 * width, 0.8 * width
    if spec.bounds is not None:
        lo, hi = spec.bounds
        return (lo + hi) / 2.0, (hi - lo) / 6.0
    return 0.0, 1.0


def planted_logit(values: dict, schema: Schema) -> float:
    """The generator's ground-truth log-odds for one record."""
    z = 0.0
    cont_i = 0
    ord_i = 0
    for spec in schema:
        if spec.kind == CONTINUOUS:
            mean, sd = _cont_params(spec)
            w = _CONT_WEIGHTS[cont_i % len(_CONT_WEIGHTS)]
            z += w * (values[spec.name] - mean) / sd
            cont_i += 1
        elif spec.ordinal_risk is not None:
            slope = _ORDINAL_SLOPES[ord_i % len(_ORDINAL_SLOPES)]
            ranks = spec.ordinal_risk
            mean_rank = (len(spec.categories) + 1) / 2.0
            z += slope * (mean_rank - ranks[values[spec.name]])
            ord_i += 1
        else:
            cats = spec.categories
            i = cats.index(values[spec.name])
            if len(cats) > 1:
                z += 0.8 * (i / (len(cats) - 1) - 0.5)
    return z


def gen_synthetic(n: int, seed: int, schema: Schema) -> Dataset:
    """Deterministic synthetic cohort: n patients x 6 monthly records."""
    if n < 1:
        raise ValueError("n must be >= 1")
    validate_schema(schema)
    rng = np.random.default_rng(seed)
    width = len(str(n))

    cont_specs = [f for f in schema if f.kind == CONTINUOUS]
    cat_specs = [f for f in schema if f.kind == CATEGORICAL]

    records = []
    for i in range(n):
        pid = f"p{i + 1:0{width}d}"
        base = {}
        drift = {}
        for spec in cont_specs:
            mean, sd = _cont_params(spec)
            v = rng.normal(mean, sd)
            if spec.bounds is not None:
                v = float(np.clip(v, *spec.bounds))
            base[spec.name] = v
            drift[spec.name] = rng.normal(0.0, 0.05 * sd)
        for spec in cat_specs:
            base[spec.name] = spec.categories[rng.integers(len(spec.categories))]

        for m in range(_MONTHS):
            values = {}
            for spec in cont_specs:
                mean, sd = _cont_params(spec)
                if spec.actionable:
                    v = base[spec.name] + m * drift[spec.name] + rng.normal(0.0, 0.015 * sd)
                else:
                    v = base[spec.name]  # age-like vars stay put within the window
                if spec.bounds is not None:
                    v = float(np.clip(v, *spec.bounds))
                values[spec.name] = round(v, 2)
            for spec in cat_specs:
                values[spec.name] = base[spec.name]
            z = planted_logit(values, schema)
            label = int(rng.random() < 1.0 / (1.0 + math.exp(-z)))
            records.append(PatientRecord(
                patient_id=pid,
                timestamp=date(2024, m + 1, 15),
                values=values,
                label=label,
            ))
    return Dataset(schema=schema, records=records).validate()


def train_test_split(dataset: Dataset, test_fraction: float, seed: int) -> tuple[Dataset, Dataset]:
    """Seeded shuffle split by record."""
    if not 0.0 < test_fraction < 1.0:
        raise ValueError("test_fraction must be in (0, 1)")
    rng = np.random.default_rng(seed)
    order = rng.permutation(len(dataset.records))
    n_test = max(1, int(round(len(order) * test_fraction)))
    test_idx = set(order[:n_test].tolist())
    train = [r for i, r in enumerate(dataset.records) if i not in test_idx]
    test = [r for i, r in enumerate(dataset.records) if i in test_idx]
    return (Dataset(dataset.schema, train), Dataset(dataset.schema, test))
