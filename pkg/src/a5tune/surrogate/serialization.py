# Copyright 2025 Christophe Roeder. All rights reserved.

"""Versioned JSON documents for trained models."""

import json
from pathlib import Path
from typing import Any, Union

import numpy as np

from ..sweep import atomic_write_text
from .ensembles import BoostedRegressor, ForestRegressor
from .linear import PolynomialRegressor
from .models import ModelKind, ModelSpec, TrainedModel
from .tree import TreeRegressor

MODEL_SCHEMA = "a5tune.model"
MODEL_SCHEMA_VERSION = 1

_DECODERS = {
    ModelKind.LINEAR: PolynomialRegressor.from_dict,
    ModelKind.POLY4: PolynomialRegressor.from_dict,
    ModelKind.DECISION_TREE: TreeRegressor.from_dict,
    ModelKind.RANDOM_FOREST: ForestRegressor.from_dict,
    ModelKind.GBT: BoostedRegressor.from_dict,
}


def model_to_dict(model: TrainedModel) -> dict[str, Any]:
    return {
        "schema": MODEL_SCHEMA,
        "schema_version": MODEL_SCHEMA_VERSION,
        "kind": model.kind.value,
        "target": model.target,
        "hyperparams": model.spec.hyperparams,
        "fingerprint": model.fingerprint,
        "train_size": model.train_size,
        "features": {
            "mean": model.feature_mean.tolist(),
            "scale": model.feature_scale.tolist(),
            "low": model.feature_low.tolist(),
            "high": model.feature_high.tolist(),
        },
        "regressor": model.regressor.to_dict(),
    }


def model_from_dict(doc: dict[str, Any]) -> TrainedModel:
    if doc.get("schema") != MODEL_SCHEMA:
        raise ValueError("Document is not a serialized model")
    if doc.get("schema_version") != MODEL_SCHEMA_VERSION:
        raise ValueError(
            f"Unsupported model schema version {doc.get('schema_version')}"
        )
    try:
        spec = ModelSpec(ModelKind(doc["kind"]), doc["target"], doc["hyperparams"])
        features = doc["features"]
        return TrainedModel(
            spec=spec,
            regressor=_DECODERS[spec.kind](doc["regressor"]),
            feature_mean=np.asarray(features["mean"], dtype=float),
            feature_scale=np.asarray(features["scale"], dtype=float),
            feature_low=np.asarray(features["low"], dtype=float),
            feature_high=np.asarray(features["high"], dtype=float),
            fingerprint=doc.get("fingerprint", ""),
            train_size=int(doc.get("train_size", 0)),
        )
    except (KeyError, TypeError) as e:
        raise ValueError(f"Malformed model document: missing or invalid {e}") from e


def save_model(model: TrainedModel, path: Union[str, Path]) -> None:
    text = json.dumps(model_to_dict(model), sort_keys=True, separators=(",", ":"))
    atomic_write_text(path, text + "\n")


def load_model(path: Union[str, Path]) -> TrainedModel:
    path = Path(path)
    if not path.exists():
        raise ValueError(f"Model file not found: {path}")
    try:
        with open(path, encoding="utf-8") as f:
            doc = json.load(f)
    except json.JSONDecodeError as e:
        raise ValueError(f"Malformed model file {path}: {e}") from e
    return model_from_dict(doc)


def model_filename(model: TrainedModel) -> str:
    """models/<kpi>_<kind>.json naming."""
    return f"{model.target}_{model.kind.value}.json"
