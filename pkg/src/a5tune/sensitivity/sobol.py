# Copyright 2025 Christophe Roeder. All rights reserved.

"""Variance-based sensitivity indices from Saltelli sample matrices."""

import csv
import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, TextIO

import numpy as np

from ..handover import THRESHOLD_MAX_DBM, THRESHOLD_MIN_DBM, TTT_VALUES_MS
from ..surrogate import FEATURE_NAMES, TrainedModel

logger = logging.getLogger(__name__)

MIN_N_BASE = 64

SOBOL_HEADERS = [
    "kpi",
    "input",
    "first_order",
    "first_order_se",
    "total_order",
    "total_order_se",
]

# Relative variance below which an output is treated as constant
ZERO_VARIANCE_RTOL = 1e-20

VectorFunction = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class SobolConfig:
    """
    Sampling box and size for a Sobol analysis.

    discrete_levels[i], when set, replaces the uniform draw on dimension i
    with equal-width binning onto those values.
    """

    n_base: int = 4096
    bounds: tuple[tuple[float, float], ...] = (
        (float(min(TTT_VALUES_MS)), float(max(TTT_VALUES_MS))),
        (float(THRESHOLD_MIN_DBM), float(THRESHOLD_MAX_DBM)),
        (float(THRESHOLD_MIN_DBM), float(THRESHOLD_MAX_DBM)),
    )
    discrete_levels: tuple[Optional[tuple[float, ...]], ...] = (
        tuple(float(v) for v in TTT_VALUES_MS),
        None,
        None,
    )
    seed: int = 0
    names: tuple[str, ...] = FEATURE_NAMES

    def __post_init__(self) -> None:
        if self.n_base < 1 or self.n_base & (self.n_base - 1):
            raise ValueError(f"n_base must be a power of two, got {self.n_base}")
        d = len(self.bounds)
        if d == 0:
            raise ValueError("At least one input dimension is required")
        if len(self.discrete_levels) != d or len(self.names) != d:
            raise ValueError("bounds, discrete_levels and names must have equal length")
        for name, (low, high) in zip(self.names, self.bounds):
            if not low < high:
                raise ValueError(f"Bounds of {name} must satisfy low < high")
        for name, levels in zip(self.names, self.discrete_levels):
            if levels is not None and len(levels) == 0:
                raise ValueError(f"Discrete levels of {name} must not be empty")
        if self.seed < 0:
            raise ValueError(f"seed must be >= 0, got {self.seed}")

    @property
    def dimension(self) -> int:
        return len(self.bounds)

    @classmethod
    def for_cop_box(cls, n_base: int = 4096, seed: int = 0) -> "SobolConfig":
        return cls(n_base=n_base, seed=seed)

    @classmethod
    def continuous(
        cls,
        bounds: tuple[tuple[float, float], ...],
        n_base: int = 4096,
        seed: int = 0,
    ) -> "SobolConfig":
        """Box of continuous inputs named x1..xd."""
        d = len(bounds)
        return cls(
            n_base=n_base,
            bounds=tuple(bounds),
            discrete_levels=(None,) * d,
            seed=seed,
            names=tuple(f"x{i + 1}" for i in range(d)),
        )

    def scale(self, U: np.ndarray) -> np.ndarray:
        """Map unit-cube samples onto the box, binning discrete dimensions."""
        X = np.empty_like(U)
        for i, (bounds, levels) in enumerate(zip(self.bounds, self.discrete_levels)):
            low, high = bounds
            if levels is None:
                X[:, i] = low + U[:, i] * (high - low)
            else:
                k = len(levels)
                idx = np.minimum((U[:, i] * k).astype(int), k - 1)
                X[:, i] = np.asarray(levels, dtype=float)[idx]
        return X


@dataclass(frozen=True)
class SaltelliSample:
    """A, B and the cross matrices AB[i] = A with column i taken from B."""

    A: np.ndarray
    B: np.ndarray
    AB: np.ndarray  # (d, n_base, d)

    @property
    def n_base(self) -> int:
        return self.A.shape[0]

    def stacked(self) -> np.ndarray:
        """All n_base * (d + 2) evaluation points: A, B, AB[0], ..., AB[d-1]."""
        return np.concatenate([self.A, self.B, *self.AB], axis=0)


def saltelli_matrices(cfg: SobolConfig) -> SaltelliSample:
    """Draw A and B from one seeded (n_base, 2d) uniform matrix and cross them."""
    d = cfg.dimension
    rng = np.random.default_rng(cfg.seed)
    U = rng.random((cfg.n_base, 2 * d))
    A = cfg.scale(U[:, :d])
    B = cfg.scale(U[:, d:])
    AB = np.repeat(A[None, :, :], d, axis=0)
    for i in range(d):
        AB[i, :, i] = B[:, i]
    return SaltelliSample(A=A, B=B, AB=AB)


@dataclass(frozen=True)
class SobolIndices:
    """First- and total-order indices with standard errors, one entry per input."""

    names: tuple[str, ...]
    first_order: np.ndarray
    first_order_se: np.ndarray
    total_order: np.ndarray
    total_order_se: np.ndarray
    variance: float
    zero_variance: bool
    evaluations: int

    def as_rows(self, kpi: str) -> list[list[str]]:
        return [
            [
                kpi,
                name,
                f"{self.first_order[i]:.6f}",
                f"{self.first_order_se[i]:.6f}",
                f"{self.total_order[i]:.6f}",
                f"{self.total_order_se[i]:.6f}",
            ]
            for i, name in enumerate(self.names)
        ]

    def most_influential(self) -> str:
        return self.names[int(np.argmax(self.first_order))]


def sobol_indices(f: VectorFunction, cfg: SobolConfig) -> SobolIndices:
    """
    Estimate first- and total-order Sobol indices of f over the box.

    f takes an (n, d) array of inputs and returns n outputs. Outputs are
    centered before estimation. First order uses the mean of
    f(B) * (f(AB_i) - f(A)) over the same-sample variance
    mean(f(B) * (f(B) - f(A)));
    total order uses Jansen's mean((f(A) - f(AB_i))^2) / 2 over the output
    variance. A constant output yields all-zero indices with zero_variance set.
    """
    if cfg.n_base < MIN_N_BASE:
        raise ValueError(
            f"n_base must be >= {MIN_N_BASE} for estimation, got {cfg.n_base}"
        )
    sample = saltelli_matrices(cfg)
    n, d = cfg.n_base, cfg.dimension

    y = np.asarray(f(sample.stacked()), dtype=float).reshape(-1)
    if y.shape[0] != n * (d + 2):
        raise ValueError(f"f returned {y.shape[0]} values for {n * (d + 2)} inputs")
    if not np.all(np.isfinite(y)):
        raise ValueError("f returned non-finite values")

    f_a = y[:n]
    f_b = y[n : 2 * n]
    f_ab = y[2 * n :].reshape(d, n)

    mu = float(np.mean(np.concatenate([f_a, f_b])))
    f_a, f_b, f_ab = f_a - mu, f_b - mu, f_ab - mu
    variance = float(np.mean(np.concatenate([f_a, f_b]) ** 2))

    zeros = np.zeros(d)
    if variance <= ZERO_VARIANCE_RTOL * max(mu * mu, np.finfo(float).tiny):
        logger.warning("Output variance is zero; all Sobol indices set to 0")
        return SobolIndices(cfg.names, zeros, zeros, zeros, zeros, 0.0, True, len(y))

    same_sample = float(np.mean(f_b * (f_b - f_a)))
    denom = same_sample if same_sample > 0 else variance

    first_terms = f_b[None, :] * (f_ab - f_a[None, :])
    total_terms = 0.5 * (f_a[None, :] - f_ab) ** 2
    root_n = math.sqrt(n)
    first = first_terms.mean(axis=1) / denom
    first_se = first_terms.std(axis=1, ddof=1) / root_n / denom
    total = total_terms.mean(axis=1) / variance
    total_se = total_terms.std(axis=1, ddof=1) / root_n / variance

    for i, name in enumerate(cfg.names):
        logger.debug(f"Sobol {name}: S={first[i]:.3f} ST={total[i]:.3f}")
    return SobolIndices(
        names=cfg.names,
        first_order=first,
        first_order_se=first_se,
        total_order=total,
        total_order_se=total_se,
        variance=variance,
        zero_variance=False,
        evaluations=len(y),
    )


def write_indices_csv(results: dict[str, SobolIndices], w: TextIO) -> None:
    """Write indices for several KPIs in insertion order."""
    writer = csv.writer(w, lineterminator="\n")
    writer.writerow(SOBOL_HEADERS)
    for kpi, indices in results.items():
        writer.writerows(indices.as_rows(kpi))


def analyze_models(
    models: Iterable[TrainedModel], cfg: Optional[SobolConfig] = None
) -> dict[str, SobolIndices]:
    """Sobol indices of each surrogate over the COP box, keyed by KPI."""
    cfg = cfg or SobolConfig.for_cop_box()
    results = {}
    for model in models:
        if model.target in results:
            raise ValueError(f"More than one model given for KPI '{model.target}'")
        logger.info(f"Sobol analysis of {model.spec.name} (n_base={cfg.n_base})")
        indices = sobol_indices(model.predict_many, cfg)
        top = indices.most_influential()
        logger.info(f"{model.target}: largest first-order index on {top}")
        results[model.target] = indices
    return results
