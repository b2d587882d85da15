# Copyright 2025 Christophe Roeder. All rights reserved.

"""Weighted, normalized joint KPI objective."""

from typing import Protocol, Union

import numpy as np

from ..handover import CopVector
from .models import KpiBounds


class KpiPredictor(Protocol):
    """Anything that maps an (n, 3) COP array to n KPI estimates."""

    def predict_many(self, X: np.ndarray) -> np.ndarray: ...


def normalize(values: np.ndarray, low: float, high: float) -> np.ndarray:
    """Min-max normalization clamped to [0, 1]."""
    return np.clip((np.asarray(values, dtype=float) - low) / (high - low), 0.0, 1.0)


def combine(eta: np.ndarray, xi: np.ndarray, alpha: float) -> np.ndarray:
    """alpha * eta + (1 - alpha) * xi."""
    return alpha * np.asarray(eta, dtype=float) + (1.0 - alpha) * np.asarray(
        xi, dtype=float
    )


class Objective:
    """
    alpha * normalized mean RSRP + (1 - alpha) * normalized HOSR.

    calls counts the COP points passed to evaluate_many, so callers can
    verify how many evaluations a search actually spent.
    """

    def __init__(
        self,
        rsrp_model: KpiPredictor,
        hosr_model: KpiPredictor,
        bounds: KpiBounds,
        alpha: float = 0.5,
    ):
        if not 0.0 <= alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {alpha}")
        self.rsrp_model = rsrp_model
        self.hosr_model = hosr_model
        self.bounds = bounds
        self.alpha = float(alpha)
        self.calls = 0

    def with_alpha(self, alpha: float) -> "Objective":
        return Objective(self.rsrp_model, self.hosr_model, self.bounds, alpha)

    def predict_kpis(self, X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Raw surrogate estimates; not counted as objective evaluations."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        rsrp = np.asarray(self.rsrp_model.predict_many(X), dtype=float)
        hosr = np.asarray(self.hosr_model.predict_many(X), dtype=float)
        return rsrp, hosr

    def score(self, rsrp: np.ndarray, hosr: np.ndarray) -> np.ndarray:
        b = self.bounds
        eta = normalize(rsrp, b.rsrp_min, b.rsrp_max)
        xi = normalize(hosr, b.hosr_min, b.hosr_max)
        return combine(eta, xi, self.alpha)

    def evaluate_many(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        self.calls += X.shape[0]
        return self.score(*self.predict_kpis(X))

    def __call__(self, cop: Union[CopVector, tuple[int, int, int]]) -> float:
        values = cop.as_tuple() if isinstance(cop, CopVector) else cop
        return float(self.evaluate_many(np.array([values], dtype=float))[0])


def objective(cop: CopVector, obj: Objective) -> float:
    """Objective value of one COP."""
    return obj(cop)
