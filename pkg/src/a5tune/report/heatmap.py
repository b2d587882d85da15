# Copyright 2025 Christophe Roeder. All rights reserved.

"""KPI and objective matrices over the threshold plane of one TTT."""

import csv
import logging
import math
from dataclasses import dataclass
from typing import Callable, Sequence, TextIO

import numpy as np

from ..optimizer import KpiBounds, combine, normalize
from ..sweep import CopMeans

logger = logging.getLogger(__name__)

REPORT_KPIS = ("mean_rsrp", "hosr", "objective")

_TITLES = {
    "mean_rsrp": "Mean RSRP (dBm)",
    "hosr": "HOSR (%)",
    "objective": "Objective",
}


def check_kpi(kpi: str) -> str:
    if kpi not in REPORT_KPIS:
        valid = ", ".join(REPORT_KPIS)
        raise ValueError(f"Unknown KPI '{kpi}' (expected one of {valid})")
    return kpi


@dataclass(frozen=True)
class Heatmap:
    """values[i, j] is the KPI at (th1_values[i], th2_values[j]); NaN if unknown."""

    kpi: str
    ttt_ms: int
    th1_values: tuple[int, ...]
    th2_values: tuple[int, ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        check_kpi(self.kpi)
        expected = (len(self.th1_values), len(self.th2_values))
        if self.values.shape != expected:
            raise ValueError(
                f"Heatmap values have shape {self.values.shape}, expected {expected}"
            )

    @property
    def title(self) -> str:
        return f"{_TITLES[self.kpi]} at TTT {self.ttt_ms} ms"

    @property
    def filename_stem(self) -> str:
        return f"{self.kpi}_ttt{self.ttt_ms}"

    def value_at(self, th1_dbm: int, th2_dbm: int) -> float:
        i = self.th1_values.index(th1_dbm)
        j = self.th2_values.index(th2_dbm)
        return float(self.values[i, j])

    def value_range(self) -> tuple[float, float]:
        finite = self.values[np.isfinite(self.values)]
        if finite.size == 0:
            return (0.0, 1.0)
        return (float(finite.min()), float(finite.max()))


def dataset_heatmap(
    points: CopMeans, kpi: str, ttt_ms: int, alpha: float = 0.5
) -> Heatmap:
    """
    Seed-averaged dataset KPIs for one TTT.

    The objective is normalized with the extrema of the whole dataset, the
    same bounds the optimizer uses.
    """
    check_kpi(kpi)
    rows = [i for i, cop in enumerate(points.cops) if cop.ttt_ms == ttt_ms]
    if not rows:
        raise ValueError(f"Dataset has no points at TTT {ttt_ms} ms")
    th1_values = tuple(sorted({points.cops[i].th1_dbm for i in rows}))
    th2_values = tuple(sorted({points.cops[i].th2_dbm for i in rows}))

    if kpi == "objective":
        bounds = KpiBounds.from_dataset(points)
        eta = normalize(points.mean_rsrp_dbm, bounds.rsrp_min, bounds.rsrp_max)
        xi = normalize(points.hosr_pct, bounds.hosr_min, bounds.hosr_max)
        source = combine(eta, xi, alpha)
    else:
        source = points.target(kpi)

    values = np.full((len(th1_values), len(th2_values)), math.nan)
    index1 = {v: i for i, v in enumerate(th1_values)}
    index2 = {v: j for j, v in enumerate(th2_values)}
    for r in rows:
        cop = points.cops[r]
        values[index1[cop.th1_dbm], index2[cop.th2_dbm]] = source[r]
    missing = int(np.isnan(values).sum())
    if missing:
        logger.warning(f"{kpi} at TTT {ttt_ms} ms: {missing} grid cells have no data")
    return Heatmap(kpi, ttt_ms, th1_values, th2_values, values)


def predicted_heatmap(
    predict: Callable[[np.ndarray], np.ndarray],
    kpi: str,
    ttt_ms: int,
    th1_values: Sequence[int],
    th2_values: Sequence[int],
) -> Heatmap:
    """Evaluate a vectorized predictor on the full threshold grid of one TTT."""
    check_kpi(kpi)
    th1 = np.asarray(th1_values, dtype=float)
    th2 = np.asarray(th2_values, dtype=float)
    g1, g2 = np.meshgrid(th1, th2, indexing="ij")
    X = np.column_stack([np.full(g1.size, float(ttt_ms)), g1.ravel(), g2.ravel()])
    values = np.asarray(predict(X), dtype=float).reshape(len(th1), len(th2))
    return Heatmap(
        kpi,
        ttt_ms,
        tuple(int(v) for v in th1_values),
        tuple(int(v) for v in th2_values),
        values,
    )


def write_heatmap_csv(heatmap: Heatmap, w: TextIO) -> None:
    """First row holds th2 values, first column th1 values; unknown cells are empty."""
    writer = csv.writer(w, lineterminator="\n")
    writer.writerow(["th1_dbm\\th2_dbm", *heatmap.th2_values])
    for th1, row in zip(heatmap.th1_values, heatmap.values):
        writer.writerow(
            [th1, *("" if math.isnan(v) else f"{v:.6f}" for v in row)]
        )
