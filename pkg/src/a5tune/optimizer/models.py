# Copyright 2025 Christophe Roeder. All rights reserved.

"""Optimizer configuration and result records."""

import logging
from dataclasses import dataclass, field
from typing import Any, Union

import numpy as np

from ..handover import THRESHOLD_MAX_DBM, THRESHOLD_MIN_DBM, CopVector
from ..sweep import CopMeans, Dataset

logger = logging.getLogger(__name__)

METHODS = ("ga", "brute")
GOLD_STANDARD_METHOD = "gold_standard"


@dataclass(frozen=True)
class KpiBounds:
    """Min-max normalization ranges for the two KPIs."""

    rsrp_min: float
    rsrp_max: float
    hosr_min: float
    hosr_max: float

    def __post_init__(self) -> None:
        if not self.rsrp_min < self.rsrp_max:
            raise ValueError(
                f"RSRP bounds must satisfy min < max, got "
                f"[{self.rsrp_min}, {self.rsrp_max}]"
            )
        if not self.hosr_min < self.hosr_max:
            raise ValueError(
                f"HOSR bounds must satisfy min < max, got "
                f"[{self.hosr_min}, {self.hosr_max}]"
            )

    @classmethod
    def from_dataset(cls, data: Union[Dataset, CopMeans]) -> "KpiBounds":
        """
        Extrema of the seed-averaged KPIs.

        A KPI that is constant over the dataset gets its range widened by one
        unit either side.
        """
        points = data.aggregate() if isinstance(data, Dataset) else data
        if len(points) == 0:
            raise ValueError("Cannot derive KPI bounds from an empty dataset")
        rsrp = _widen("mean_rsrp", points.mean_rsrp_dbm)
        hosr = _widen("hosr", points.hosr_pct)
        return cls(rsrp[0], rsrp[1], hosr[0], hosr[1])

    def to_dict(self) -> dict[str, float]:
        return {
            "rsrp_min": self.rsrp_min,
            "rsrp_max": self.rsrp_max,
            "hosr_min": self.hosr_min,
            "hosr_max": self.hosr_max,
        }


def _widen(kpi: str, values: np.ndarray) -> tuple[float, float]:
    low, high = float(values.min()), float(values.max())
    if low < high:
        return low, high
    logger.warning(f"{kpi} is constant ({low}) over the dataset; widening its range")
    return low - 1.0, high + 1.0


@dataclass(frozen=True)
class GaConfig:
    """Genetic algorithm settings; population * generations is the budget."""

    population: int = 20
    generations: int = 5
    tournament: int = 3
    crossover_rate: float = 0.9
    mutation_rate: float = 0.1
    elitism: int = 2
    seed: int = 0
    max_evaluations: int = 100
    threshold_sigma_db: float = 3.0

    def __post_init__(self) -> None:
        if self.population < 2:
            raise ValueError(f"population must be >= 2, got {self.population}")
        if self.generations < 1:
            raise ValueError(f"generations must be >= 1, got {self.generations}")
        if not 1 <= self.tournament <= self.population:
            raise ValueError(f"tournament must be in [1, {self.population}]")
        for name in ("crossover_rate", "mutation_rate"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value}")
        if not 0 <= self.elitism < self.population:
            raise ValueError(f"elitism must be in [0, {self.population - 1}]")
        if self.seed < 0:
            raise ValueError(f"seed must be >= 0, got {self.seed}")
        if self.threshold_sigma_db <= 0:
            raise ValueError("threshold_sigma_db must be positive")
        if self.budget > self.max_evaluations:
            raise ValueError(
                f"GA budget {self.budget} (population x generations) exceeds "
                f"max_evaluations {self.max_evaluations}"
            )

    @property
    def budget(self) -> int:
        return self.population * self.generations


@dataclass(frozen=True)
class GoldStandard:
    """Vendor-recommended COP box used as the untuned reference."""

    ttt_ms: int = 256
    th1_range: tuple[int, int] = (-110, -100)
    th2_range: tuple[int, int] = (-108, -98)

    def __post_init__(self) -> None:
        object.__setattr__(self, "th1_range", tuple(int(v) for v in self.th1_range))
        object.__setattr__(self, "th2_range", tuple(int(v) for v in self.th2_range))
        for name in ("th1_range", "th2_range"):
            rng = getattr(self, name)
            if len(rng) != 2 or rng[0] > rng[1]:
                raise ValueError(f"{name} must be (low, high) with low <= high")
            if rng[0] < THRESHOLD_MIN_DBM or rng[1] > THRESHOLD_MAX_DBM:
                raise ValueError(
                    f"{name} must lie within [{THRESHOLD_MIN_DBM}, {THRESHOLD_MAX_DBM}]"
                )
        self.midpoint()

    def midpoint(self) -> CopVector:
        """Centre of the box, rounded toward the lower threshold."""
        return CopVector(
            self.ttt_ms,
            (self.th1_range[0] + self.th1_range[1]) // 2,
            (self.th2_range[0] + self.th2_range[1]) // 2,
        )

    def contains(self, cop: CopVector) -> bool:
        return (
            cop.ttt_ms == self.ttt_ms
            and self.th1_range[0] <= cop.th1_dbm <= self.th1_range[1]
            and self.th2_range[0] <= cop.th2_dbm <= self.th2_range[1]
        )


@dataclass
class OptResult:
    """Best COP found by one search method."""

    method: str
    alpha: float
    best: CopVector
    objective: float
    mean_rsrp_dbm: float
    hosr_pct: float
    evaluations: int
    trace: list[float] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "method": self.method,
            "alpha": self.alpha,
            "best": {
                "ttt_ms": self.best.ttt_ms,
                "th1_dbm": self.best.th1_dbm,
                "th2_dbm": self.best.th2_dbm,
            },
            "objective": self.objective,
            "mean_rsrp_dbm": self.mean_rsrp_dbm,
            "hosr_pct": self.hosr_pct,
            "evaluations": self.evaluations,
            "trace": list(self.trace),
        }

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "OptResult":
        try:
            best = doc["best"]
            return cls(
                method=doc["method"],
                alpha=float(doc["alpha"]),
                best=CopVector(best["ttt_ms"], best["th1_dbm"], best["th2_dbm"]),
                objective=float(doc["objective"]),
                mean_rsrp_dbm=float(doc["mean_rsrp_dbm"]),
                hosr_pct=float(doc["hosr_pct"]),
                evaluations=int(doc["evaluations"]),
                trace=[float(v) for v in doc.get("trace", [])],
            )
        except (KeyError, TypeError) as e:
            raise ValueError(f"Malformed optimization result: {e}") from e
