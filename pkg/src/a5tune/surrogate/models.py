# Copyright 2025 Christophe Roeder. All rights reserved.

"""Model specifications and the trained-model wrapper."""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Protocol, Union

import numpy as np

from ..handover import CopVector

logger = logging.getLogger(__name__)

KPI_NAMES = ("mean_rsrp", "hosr")
FEATURE_NAMES = ("ttt_ms", "th1_dbm", "th2_dbm")
HOSR_MIN = 0.0
HOSR_MAX = 100.0


class ModelKind(str, Enum):
    LINEAR = "linear"
    POLY4 = "poly4"
    DECISION_TREE = "decision_tree"
    RANDOM_FOREST = "random_forest"
    GBT = "gbt"


DEFAULT_HYPERPARAMS: dict[ModelKind, dict[str, Any]] = {
    ModelKind.LINEAR: {"ridge": 1e-8},
    ModelKind.POLY4: {"degree": 4, "ridge": 1e-8},
    ModelKind.DECISION_TREE: {"max_depth": 8, "min_samples_leaf": 2},
    ModelKind.RANDOM_FOREST: {
        "n_trees": 200,
        "max_depth": 10,
        "max_features": 2,
        "min_samples_leaf": 1,
        "bootstrap": True,
        "seed": 0,
    },
    ModelKind.GBT: {
        "n_rounds": 300,
        "max_depth": 4,
        "learning_rate": 0.1,
        "min_samples_leaf": 2,
        "subsample": 1.0,
        "seed": 0,
    },
}

# Hyperparameters that must be strictly positive when present
_POSITIVE = {
    "degree",
    "max_depth",
    "min_samples_leaf",
    "n_trees",
    "max_features",
    "n_rounds",
    "learning_rate",
    "subsample",
}


@dataclass(frozen=True)
class ModelSpec:
    """Which regressor to fit, for which KPI, with which hyperparameters."""

    kind: ModelKind
    target: str
    hyperparams: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        try:
            kind = ModelKind(self.kind)
        except ValueError as e:
            valid = ", ".join(k.value for k in ModelKind)
            raise ValueError(
                f"Unknown model kind '{self.kind}' (expected {valid})"
            ) from e
        object.__setattr__(self, "kind", kind)
        if self.target not in KPI_NAMES:
            raise ValueError(f"Unknown KPI target '{self.target}'")

        defaults = DEFAULT_HYPERPARAMS[kind]
        unknown = set(self.hyperparams) - set(defaults)
        if unknown:
            raise ValueError(
                f"Unknown hyperparameters for {kind.value}: {sorted(unknown)}"
            )
        merged = {**defaults, **self.hyperparams}
        for name, value in merged.items():
            if name in _POSITIVE and not value > 0:
                raise ValueError(f"{kind.value}.{name} must be positive, got {value}")
        if merged.get("ridge", 0.0) < 0:
            raise ValueError(f"{kind.value}.ridge must be >= 0")
        if kind == ModelKind.GBT and merged["subsample"] > 1.0:
            raise ValueError("gbt.subsample must be in (0, 1]")
        if kind == ModelKind.RANDOM_FOREST and merged["max_features"] > len(
            FEATURE_NAMES
        ):
            raise ValueError(
                f"random_forest.max_features must be <= {len(FEATURE_NAMES)}"
            )
        object.__setattr__(self, "hyperparams", merged)

    @property
    def name(self) -> str:
        return f"{self.target}_{self.kind.value}"


class Regressor(Protocol):
    """A fitted regressor over standardized features."""

    def predict(self, Z: np.ndarray) -> np.ndarray: ...

    def to_dict(self) -> dict[str, Any]: ...


class TrainedModel:
    """
    A fitted surrogate for one KPI.

    Holds the training-set standardization and box so predictions accept raw
    COP values. Instances are not mutated after construction apart from the
    one-shot extrapolation warning flag.
    """

    def __init__(
        self,
        spec: ModelSpec,
        regressor: Regressor,
        feature_mean: np.ndarray,
        feature_scale: np.ndarray,
        feature_low: np.ndarray,
        feature_high: np.ndarray,
        fingerprint: str = "",
        train_size: int = 0,
    ):
        self.spec = spec
        self.regressor = regressor
        self.feature_mean = np.asarray(feature_mean, dtype=float)
        self.feature_scale = np.asarray(feature_scale, dtype=float)
        self.feature_low = np.asarray(feature_low, dtype=float)
        self.feature_high = np.asarray(feature_high, dtype=float)
        self.fingerprint = fingerprint
        self.train_size = train_size
        self._warned_extrapolation = False

    @property
    def kind(self) -> ModelKind:
        return self.spec.kind

    @property
    def target(self) -> str:
        return self.spec.target

    def standardize(self, X: np.ndarray) -> np.ndarray:
        return (np.asarray(X, dtype=float) - self.feature_mean) / self.feature_scale

    def extrapolates(self, X: np.ndarray) -> np.ndarray:
        """Row mask of inputs outside the training box."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        return np.any((X < self.feature_low) | (X > self.feature_high), axis=1)

    def predict_many(self, X: np.ndarray) -> np.ndarray:
        """Predict for an (n, 3) array of raw COP values."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if not self._warned_extrapolation and self.extrapolates(X).any():
            logger.warning(
                f"{self.spec.name}: predicting outside the training box "
                f"{self.feature_low.tolist()}..{self.feature_high.tolist()}"
            )
            self._warned_extrapolation = True
        y = self.regressor.predict(self.standardize(X))
        if self.target == "hosr":
            y = np.clip(y, HOSR_MIN, HOSR_MAX)
        return y

    def predict(self, cop: Union[CopVector, tuple[int, int, int]]) -> float:
        values = cop.as_tuple() if isinstance(cop, CopVector) else cop
        return float(self.predict_many(np.array([values], dtype=float))[0])


def predict(model: TrainedModel, cop: CopVector) -> float:
    """Scalar KPI estimate for one COP; HOSR estimates are clamped to [0, 100]."""
    return model.predict(cop)
