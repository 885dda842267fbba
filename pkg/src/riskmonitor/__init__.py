"""Explainable risk-monitoring engine.

Predicts binary onset risk from tabular patient records with a logistic
model and explains each prediction three ways: signed feature
attributions, data-centric population context, and actionable
counterfactual recommendations, plus live what-if re-scoring.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .attributions import brute_shapley, important_risk_factors, linear_shap
from .counterfactual import (
    estimate_risk_reduction,
    feasibility_categorical,
    feasibility_continuous,
    generate,
    render_recommendation,
    what_if,
)
from .datacentric import range_indicator, risk_history, summarize_population
from .ingest import Dataset, PatientRecord, gen_synthetic, load_csv, train_test_split, write_csv
from .model import (
    RiskLevel,
    TrainedModel,
    bucket_risk,
    evaluate,
    fit,
    load,
    predict_proba,
    save,
)
from .schema import FeatureSpec, default_schema, load_schema, save_schema

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "Dataset",
    "FeatureSpec",
    "PatientRecord",
    "RiskLevel",
    "TrainedModel",
    "brute_shapley",
    "bucket_risk",
    "default_schema",
    "estimate_risk_reduction",
    "evaluate",
    "feasibility_categorical",
    "feasibility_continuous",
    "fit",
    "gen_synthetic",
    "generate",
    "important_risk_factors",
    "linear_shap",
    "load",
    "load_csv",
    "predict_proba",
    "range_indicator",
    "render_recommendation",
    "risk_history",
    "save",
    "save_schema",
    "summarize_population",
    "train_test_split",
    "what_if",
    "write_csv",
]
