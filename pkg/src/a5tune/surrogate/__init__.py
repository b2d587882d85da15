# Copyright 2025 Christophe Roeder. All rights reserved.

"""Regression surrogates mapping COP vectors to KPIs."""

from .ensembles import BoostedRegressor, ForestRegressor
from .linear import PolynomialRegressor, monomial_exponents
from .models import (
    DEFAULT_HYPERPARAMS,
    FEATURE_NAMES,
    KPI_NAMES,
    ModelKind,
    ModelSpec,
    TrainedModel,
    predict,
)
from .report import EVAL_REPORT_HEADERS, read_csv, write_csv, write_text
from .serialization import load_model, model_filename, save_model
from .training import EvalEntry, EvalReport, evaluate, fit, rmse, split, train_all
from .tree import RegressionTree, TreeRegressor, grow_tree

__all__ = [
    "ModelKind",
    "ModelSpec",
    "TrainedModel",
    "KPI_NAMES",
    "FEATURE_NAMES",
    "DEFAULT_HYPERPARAMS",
    "RegressionTree",
    "TreeRegressor",
    "ForestRegressor",
    "BoostedRegressor",
    "PolynomialRegressor",
    "monomial_exponents",
    "grow_tree",
    "split",
    "fit",
    "predict",
    "evaluate",
    "rmse",
    "train_all",
    "EvalEntry",
    "EvalReport",
    "EVAL_REPORT_HEADERS",
    "read_csv",
    "write_csv",
    "write_text",
    "save_model",
    "load_model",
    "model_filename",
]
