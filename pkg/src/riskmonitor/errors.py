"""Exception types raised across the engine.

Every error that callers are expected to handle derives from
RiskMonitorError so the service layer can map them to HTTP codes in one
place.
"""


class RiskMonitorError(Exception):
    """Base class for all engine errors."""


class SchemaError(RiskMonitorError):
    """A feature schema violates its own invariants."""


# --- ingest ---------------------------------------------------------------

class MissingColumn(RiskMonitorError):
    def __init__(self, column: str):
        super().__init__(f"CSV header is missing schema column {column!r}")
        self.column = column


class BadValue(RiskMonitorError):
    """An unparseable or out-of-vocabulary value. `row` is the 0-based
    index among data rows (header excluded); None when not row-bound."""

    def __init__(self, message: str, row: int | None = None, feature: str | None = None):
        suffix = f" (row {row})" if row is not None else ""
        super().__init__(message + suffix)
        self.row = row
        self.feature = feature


class EmptyDataset(RiskMonitorError):
    pass


# --- model ----------------------------------------------------------------

class SingleClass(RiskMonitorError):
    """Training split contains only one outcome class."""


class ConstantFeature(RiskMonitorError):
    def __init__(self, feature: str):
        super().__init__(f"feature {feature!r} is constant in the training split")
        self.feature = feature


class NonFinite(RiskMonitorError):
    """Optimization diverged to NaN/inf."""


class UnlabeledData(RiskMonitorError):
    pass


class SchemaMismatch(RiskMonitorError):
    """Record does not fit the schema the model was trained on."""


class OutOfRange(RiskMonitorError):
    """Probability outside [0, 1]."""


class CorruptArtifact(RiskMonitorError):
    pass


class SchemaHashMismatch(RiskMonitorError):
    pass


# --- attributions ---------------------------------------------------------

class TooManyFeatures(RiskMonitorError):
    """Exact Shapley enumeration is bounded to 12 encoded features."""


class NoActionableFeatures(RiskMonitorError):
    pass


# --- counterfactual -------------------------------------------------------

class ZeroBaselineNoRange(RiskMonitorError):
    """Percentage-change feasibility is undefined: current value is 0 and
    the feature declares no recommended range to fall back on."""


class UnknownLabel(RiskMonitorError):
    pass


class AlreadyAtTarget(RiskMonitorError):
    pass


class NoCounterfactualFound(RiskMonitorError):
    pass


class InvalidChange(RiskMonitorError):
    pass


class UnknownFeature(RiskMonitorError):
    pass


class MissingTemplate(RiskMonitorError):
    def __init__(self, feature: str, label: str):
        super().__init__(f"no recommendation template for {feature}={label!r}")
        self.feature = feature
        self.label = label


# --- datacentric ----------------------------------------------------------

class NoRecommendedRange(RiskMonitorError):
    pass
