# Copyright 2025 Christophe Roeder. All rights reserved.

"""Sweep specification, scenario bundle and dataset records."""

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Optional

import numpy as np

from ..handover import (
    THRESHOLD_MAX_DBM,
    THRESHOLD_MIN_DBM,
    TTT_VALUES_MS,
    CopVector,
    EventConfig,
    KpiSample,
    SimulationConfig,
)
from ..mobility import MobilityConfig
from ..scenario import NetworkConfig, NetworkLayout, build_layout

DATASET_SCHEMA_VERSION = 1

DATASET_HEADERS = [
    "ttt_ms",
    "th1_dbm",
    "th2_dbm",
    "seed",
    "mean_rsrp_dbm",
    "hosr_pct",
    "hos",
    "hof",
]

ThresholdRange = tuple[int, int, int]  # (start, stop, step), inclusive


def _check_range(name: str, rng: ThresholdRange) -> ThresholdRange:
    if len(rng) != 3:
        raise ValueError(f"{name} must be (start, stop, step), got {rng}")
    start, stop, step = (int(v) for v in rng)
    if step <= 0:
        raise ValueError(f"{name} step must be positive, got {step}")
    if start > stop:
        raise ValueError(f"{name} is empty: start {start} > stop {stop}")
    if (stop - start) % step != 0:
        raise ValueError(f"{name} step {step} does not divide {stop - start}")
    if start < THRESHOLD_MIN_DBM or stop > THRESHOLD_MAX_DBM:
        raise ValueError(
            f"{name} must lie within [{THRESHOLD_MIN_DBM}, {THRESHOLD_MAX_DBM}]"
        )
    return (start, stop, step)


def range_values(rng: ThresholdRange) -> list[int]:
    start, stop, step = rng
    return list(range(start, stop + 1, step))


@dataclass(frozen=True)
class SweepSpec:
    """COP grid and seeds to simulate."""

    ttt_values: tuple[int, ...] = TTT_VALUES_MS
    th1_range: ThresholdRange = (THRESHOLD_MIN_DBM, THRESHOLD_MAX_DBM, 1)
    th2_range: ThresholdRange = (THRESHOLD_MIN_DBM, THRESHOLD_MAX_DBM, 1)
    seeds: tuple[int, ...] = (1, 2, 3)

    def __post_init__(self) -> None:
        ttt_values = tuple(int(v) for v in self.ttt_values)
        if not ttt_values:
            raise ValueError("ttt_values must not be empty")
        if len(set(ttt_values)) != len(ttt_values):
            raise ValueError(f"ttt_values contains duplicates: {ttt_values}")
        seeds = tuple(int(s) for s in self.seeds)
        if not seeds:
            raise ValueError("seeds must not be empty")
        if any(s < 0 for s in seeds):
            raise ValueError(f"Seeds must be non-negative, got {seeds}")
        if len(set(seeds)) != len(seeds):
            raise ValueError(f"seeds contains duplicates: {seeds}")
        object.__setattr__(self, "ttt_values", ttt_values)
        object.__setattr__(self, "seeds", seeds)
        object.__setattr__(self, "th1_range", _check_range("th1_range", self.th1_range))
        object.__setattr__(self, "th2_range", _check_range("th2_range", self.th2_range))
        for ttt in ttt_values:
            # Raises for non-standard TTT values
            CopVector(ttt, self.th1_range[0], self.th2_range[0])


@dataclass(frozen=True)
class Scenario:
    """Everything except the COP that determines a simulation run."""

    network: NetworkConfig = field(default_factory=NetworkConfig)
    mobility: MobilityConfig = field(default_factory=MobilityConfig)
    events: EventConfig = field(default_factory=EventConfig)
    simulation: SimulationConfig = field(default_factory=SimulationConfig)

    def __post_init__(self) -> None:
        step_ms = self.simulation.step_ms
        for name in ("a3_ttt_ms", "exec_delay_ms"):
            value = getattr(self.events, name)
            if value % step_ms != 0:
                raise ValueError(
                    f"{name}={value} is not divisible by step_ms={step_ms}"
                )

    @cached_property
    def layout(self) -> NetworkLayout:
        return build_layout(self.network)

    @cached_property
    def fingerprint(self) -> str:
        from .fingerprint import scenario_fingerprint

        return scenario_fingerprint(self)

    def event_config(self, cop: CopVector) -> EventConfig:
        return replace(self.events, cop=cop)


@dataclass(frozen=True)
class DatasetRow:
    """KPIs of one (COP, seed) simulation run."""

    cop: CopVector
    seed: int
    kpi: KpiSample
    hos: int
    hof: int

    @property
    def key(self) -> tuple[int, int, int, int]:
        return (*self.cop.as_tuple(), self.seed)

    def to_csv_row(self) -> list[str]:
        return [
            str(self.cop.ttt_ms),
            str(self.cop.th1_dbm),
            str(self.cop.th2_dbm),
            str(self.seed),
            f"{self.kpi.mean_rsrp_dbm:.6f}",
            f"{self.kpi.hosr_pct:.6f}",
            str(self.hos),
            str(self.hof),
        ]

    @classmethod
    def from_csv_row(cls, row: dict[str, str]) -> "DatasetRow":
        try:
            return cls(
                cop=CopVector(
                    int(row["ttt_ms"]), int(row["th1_dbm"]), int(row["th2_dbm"])
                ),
                seed=int(row["seed"]),
                kpi=KpiSample(float(row["mean_rsrp_dbm"]), float(row["hosr_pct"])),
                hos=int(row["hos"]),
                hof=int(row["hof"]),
            )
        except (KeyError, TypeError) as e:
            raise ValueError(f"Malformed dataset row {row}: {e}") from e

    def quantized(self) -> "DatasetRow":
        """Round KPIs to the precision stored in the CSV."""
        kpi = KpiSample(
            float(f"{self.kpi.mean_rsrp_dbm:.6f}"), float(f"{self.kpi.hosr_pct:.6f}")
        )
        return replace(self, kpi=kpi)


@dataclass(frozen=True)
class CopMeans:
    """Dataset rows averaged across seeds, one entry per COP, sorted by COP."""

    cops: tuple[CopVector, ...]
    mean_rsrp_dbm: np.ndarray
    hosr_pct: np.ndarray

    def __len__(self) -> int:
        return len(self.cops)

    @cached_property
    def features(self) -> np.ndarray:
        """COP matrix of shape (n, 3): ttt_ms, th1_dbm, th2_dbm."""
        return np.array([c.as_tuple() for c in self.cops], dtype=float).reshape(-1, 3)

    def target(self, kpi: str) -> np.ndarray:
        if kpi == "mean_rsrp":
            return self.mean_rsrp_dbm
        if kpi == "hosr":
            return self.hosr_pct
        raise ValueError(f"Unknown KPI: {kpi}")

    def subset(self, indices: np.ndarray) -> "CopMeans":
        return CopMeans(
            cops=tuple(self.cops[i] for i in indices),
            mean_rsrp_dbm=self.mean_rsrp_dbm[indices],
            hosr_pct=self.hosr_pct[indices],
        )


@dataclass
class Dataset:
    """Labeled sweep results sharing one scenario fingerprint."""

    rows: list[DatasetRow]
    fingerprint: str
    schema_version: int = DATASET_SCHEMA_VERSION

    def __post_init__(self) -> None:
        seen: set[tuple[int, int, int, int]] = set()
        for row in self.rows:
            if row.key in seen:
                raise ValueError(f"Duplicate dataset row for {row.cop} seed {row.seed}")
            seen.add(row.key)

    def __len__(self) -> int:
        return len(self.rows)

    def keys(self) -> set[tuple[int, int, int, int]]:
        return {row.key for row in self.rows}

    def sorted_rows(self) -> list[DatasetRow]:
        return sorted(self.rows, key=lambda r: r.key)

    def lookup(self, cop: CopVector, seed: int) -> Optional[DatasetRow]:
        for row in self.rows:
            if row.cop == cop and row.seed == seed:
                return row
        return None

    def aggregate(self) -> CopMeans:
        """Average KPIs over seeds for each COP."""
        if not self.rows:
            raise ValueError("Dataset is empty")
        groups: dict[CopVector, list[DatasetRow]] = {}
        for row in self.sorted_rows():
            groups.setdefault(row.cop, []).append(row)
        cops = sorted(groups)
        rsrp = np.array(
            [np.mean([r.kpi.mean_rsrp_dbm for r in groups[c]]) for c in cops]
        )
        hosr = np.array([np.mean([r.kpi.hosr_pct for r in groups[c]]) for c in cops])
        return CopMeans(cops=tuple(cops), mean_rsrp_dbm=rsrp, hosr_pct=hosr)
