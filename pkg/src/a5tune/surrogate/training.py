# Copyright 2025 Christophe Roeder. All rights reserved.

"""Train/test splitting, model fitting and RMSE evaluation."""

import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from ..sweep import CopMeans, Dataset
from .ensembles import BoostedRegressor, ForestRegressor
from .linear import PolynomialRegressor
from .models import KPI_NAMES, ModelKind, ModelSpec, Regressor, TrainedModel
from .tree import TreeRegressor

logger = logging.getLogger(__name__)

MIN_SPLIT_POINTS = 5

_REGRESSORS = {
    ModelKind.LINEAR: PolynomialRegressor,
    ModelKind.POLY4: PolynomialRegressor,
    ModelKind.DECISION_TREE: TreeRegressor,
    ModelKind.RANDOM_FOREST: ForestRegressor,
    ModelKind.GBT: BoostedRegressor,
}


def _as_points(data: Union[Dataset, CopMeans]) -> CopMeans:
    return data.aggregate() if isinstance(data, Dataset) else data


def split(
    data: Union[Dataset, CopMeans], train_fraction: float = 0.8, seed: int = 0
) -> tuple[CopMeans, CopMeans]:
    """
    Shuffle COP points (seed-averaged) and cut them into train and test sets.

    The train set gets floor(n * train_fraction) points; both parts keep
    the canonical COP order.
    """
    points = _as_points(data)
    n = len(points)
    if n < MIN_SPLIT_POINTS:
        raise ValueError(
            f"Need at least {MIN_SPLIT_POINTS} COP points to split, got {n}"
        )
    if not 0.0 < train_fraction < 1.0:
        raise ValueError(f"train_fraction must be in (0, 1), got {train_fraction}")
    n_train = int(math.floor(n * train_fraction))
    if n_train < 1 or n_train >= n:
        raise ValueError(
            f"train_fraction {train_fraction} leaves an empty partition for {n} points"
        )
    perm = np.random.default_rng(seed).permutation(n)
    train_idx = np.sort(perm[:n_train])
    test_idx = np.sort(perm[n_train:])
    return points.subset(train_idx), points.subset(test_idx)


def _standardization(X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    ordered = np.sort(X, axis=0)
    mean = ordered.mean(axis=0)
    scale = np.sqrt(np.mean((ordered - mean) ** 2, axis=0))
    return mean, np.where(scale > 0, scale, 1.0)


def fit(
    spec: ModelSpec, train: Union[Dataset, CopMeans], fingerprint: str = ""
) -> TrainedModel:
    """Fit one surrogate for spec.target on the training points."""
    points = _as_points(train)
    if len(points) == 0:
        raise ValueError("Cannot fit on an empty training set")
    if not fingerprint and isinstance(train, Dataset):
        fingerprint = train.fingerprint

    X = points.features
    y = np.asarray(points.target(spec.target), dtype=float)
    mean, scale = _standardization(X)
    Z = (X - mean) / scale
    regressor: Regressor = _REGRESSORS[spec.kind].fit(Z, y, spec.hyperparams)
    logger.debug(f"Fitted {spec.name} on {len(y)} points")
    return TrainedModel(
        spec=spec,
        regressor=regressor,
        feature_mean=mean,
        feature_scale=scale,
        feature_low=X.min(axis=0),
        feature_high=X.max(axis=0),
        fingerprint=fingerprint,
        train_size=len(y),
    )


def rmse(predictions: Sequence[float], labels: Sequence[float]) -> float:
    """Root mean squared error."""
    p = np.asarray(predictions, dtype=float)
    t = np.asarray(labels, dtype=float)
    if p.shape != t.shape:
        raise ValueError(f"Shape mismatch: {p.shape} vs {t.shape}")
    if p.size == 0:
        raise ValueError("RMSE of an empty set is undefined")
    return float(np.sqrt(np.mean((p - t) ** 2)))


@dataclass(frozen=True)
class EvalEntry:
    model: str
    kpi: str
    rmse: float


@dataclass
class EvalReport:
    """Test RMSE per model and KPI, sorted ascending within each KPI."""

    entries: list[EvalEntry] = field(default_factory=list)
    train_size: int = 0
    test_size: int = 0
    split_seed: int = 0

    def for_kpi(self, kpi: str) -> list[EvalEntry]:
        return [e for e in self.entries if e.kpi == kpi]

    def best(self, kpi: str) -> Optional[EvalEntry]:
        entries = self.for_kpi(kpi)
        return entries[0] if entries else None

    def rmse_of(self, model: str, kpi: str) -> float:
        for e in self.entries:
            if e.model == model and e.kpi == kpi:
                return e.rmse
        raise KeyError(f"No evaluation for {model}/{kpi}")


def evaluate(
    models: Iterable[TrainedModel],
    test: Union[Dataset, CopMeans],
    train_size: int = 0,
    split_seed: int = 0,
) -> EvalReport:
    """Test RMSE of every model on its own KPI."""
    points = _as_points(test)
    if len(points) == 0:
        raise ValueError("Cannot evaluate on an empty test set")
    entries = []
    for model in models:
        predictions = model.predict_many(points.features)
        value = rmse(predictions, points.target(model.target))
        entries.append(EvalEntry(model=model.kind.value, kpi=model.target, rmse=value))
    kpi_order = {k: i for i, k in enumerate(KPI_NAMES)}
    entries.sort(key=lambda e: (kpi_order.get(e.kpi, len(kpi_order)), e.rmse, e.model))
    return EvalReport(
        entries=entries,
        train_size=train_size,
        test_size=len(points),
        split_seed=split_seed,
    )


def train_all(
    data: Union[Dataset, CopMeans],
    kinds: Sequence[Union[str, ModelKind]] = tuple(ModelKind),
    hyperparams: Optional[dict[str, dict]] = None,
    train_fraction: float = 0.8,
    split_seed: int = 0,
    fingerprint: str = "",
) -> tuple[list[TrainedModel], EvalReport]:
    """
    Split, fit every kind for both KPIs, and evaluate on the held-out points.

    Args:
        data: Sweep dataset or already aggregated points
        kinds: Model kinds to fit
        hyperparams: Per-kind overrides keyed by kind name
        train_fraction: Share of COP points used for training
        split_seed: Seed of the shuffle split
        fingerprint: Scenario fingerprint stamped on the models

    Returns:
        (models ordered kind-major then KPI, evaluation report)
    """
    if isinstance(data, Dataset) and not fingerprint:
        fingerprint = data.fingerprint
    hyperparams = hyperparams or {}
    train, test = split(data, train_fraction, split_seed)
    logger.info(
        f"Split {len(train) + len(test)} COP points into {len(train)}/{len(test)}"
    )

    models = []
    for kind in kinds:
        kind = ModelKind(kind)
        for kpi in KPI_NAMES:
            spec = ModelSpec(kind, kpi, dict(hyperparams.get(kind.value, {})))
            logger.info(f"Training {spec.name}")
            models.append(fit(spec, train, fingerprint))
    report = evaluate(models, test, train_size=len(train), split_seed=split_seed)
    return models, report
