# Copyright 2025 Christophe Roeder. All rights reserved.

"""Handover event parameters, counters and KPI records."""

import math
from dataclasses import dataclass, field
from typing import Optional

# A5 COP box
TTT_VALUES_MS: tuple[int, ...] = (64, 128, 256, 320, 512)
THRESHOLD_MIN_DBM = -120
THRESHOLD_MAX_DBM = -90


def _as_int(name: str, value: float) -> int:
    if isinstance(value, bool) or float(value) != int(value):
        raise ValueError(f"{name} must be an integer, got {value}")
    return int(value)


@dataclass(frozen=True, order=True)
class CopVector:
    """One point of the A5 parameter space; orders lexicographically."""

    ttt_ms: int
    th1_dbm: int
    th2_dbm: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "ttt_ms", _as_int("ttt_ms", self.ttt_ms))
        object.__setattr__(self, "th1_dbm", _as_int("th1_dbm", self.th1_dbm))
        object.__setattr__(self, "th2_dbm", _as_int("th2_dbm", self.th2_dbm))
        if self.ttt_ms not in TTT_VALUES_MS:
            raise ValueError(
                f"ttt_ms {self.ttt_ms} is not one of the COP TTT values {TTT_VALUES_MS}"
            )
        for name in ("th1_dbm", "th2_dbm"):
            value = getattr(self, name)
            if not THRESHOLD_MIN_DBM <= value <= THRESHOLD_MAX_DBM:
                raise ValueError(
                    f"{name} {value} outside [{THRESHOLD_MIN_DBM}, {THRESHOLD_MAX_DBM}]"
                )

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.ttt_ms, self.th1_dbm, self.th2_dbm)

    def __str__(self) -> str:
        return f"[{self.ttt_ms}ms, {self.th1_dbm}dBm, {self.th2_dbm}dBm]"


DEFAULT_COP = CopVector(256, -105, -103)


@dataclass(frozen=True)
class EventConfig:
    """Measurement event configuration: the A5 COP plus fixed constants."""

    cop: CopVector = DEFAULT_COP
    hyst_db: float = 0.0
    cio_db: float = 0.0  # Applied to every neighbour without an override
    cell_cio_db: dict[int, float] = field(default_factory=dict)
    a3_offset_db: float = 2.0
    a3_ttt_ms: int = 160
    # Calibrated so HOSR spreads over the COP box on the default layout;
    # None disables failures
    rlf_threshold_dbm: Optional[float] = -110.0
    exec_delay_ms: int = 64
    l3_filter_k: int = 0  # 0 disables L3 filtering

    def __post_init__(self) -> None:
        if self.hyst_db < 0:
            raise ValueError(f"hyst_db must be >= 0, got {self.hyst_db}")
        if self.a3_ttt_ms < 0 or self.exec_delay_ms < 0:
            raise ValueError("a3_ttt_ms and exec_delay_ms must be >= 0")
        if self.l3_filter_k < 0:
            raise ValueError(f"l3_filter_k must be >= 0, got {self.l3_filter_k}")
        if self.rlf_threshold_dbm is not None and math.isnan(self.rlf_threshold_dbm):
            raise ValueError("rlf_threshold_dbm must not be NaN")

    def cio_for(self, cell_id: int) -> float:
        """Cell individual offset applied to a neighbour's measurement."""
        return self.cell_cio_db.get(cell_id, self.cio_db)

    def check_step(self, step_ms: int) -> None:
        """Raise ValueError unless every timer is a whole number of steps."""
        for name, value in (
            ("ttt_ms", self.cop.ttt_ms),
            ("a3_ttt_ms", self.a3_ttt_ms),
            ("exec_delay_ms", self.exec_delay_ms),
        ):
            if value % step_ms != 0:
                raise ValueError(
                    f"{name}={value} is not divisible by step_ms={step_ms}"
                )

    def constants(self) -> dict:
        """Everything except the COP, for scenario fingerprinting."""
        return {
            "hyst_db": self.hyst_db,
            "cio_db": self.cio_db,
            "cell_cio_db": {str(k): v for k, v in sorted(self.cell_cio_db.items())},
            "a3_offset_db": self.a3_offset_db,
            "a3_ttt_ms": self.a3_ttt_ms,
            "rlf_threshold_dbm": self.rlf_threshold_dbm,
            "exec_delay_ms": self.exec_delay_ms,
            "l3_filter_k": self.l3_filter_k,
        }


@dataclass
class HoCounters:
    """Inter-frequency handover outcomes; A3 executions are informational."""

    hos: int = 0
    hof: int = 0
    a3_handovers: int = 0

    @property
    def attempts(self) -> int:
        return self.hos + self.hof

    def record(self, success: bool) -> None:
        if success:
            self.hos += 1
        else:
            self.hof += 1


@dataclass(frozen=True)
class KpiSample:
    """Mean RSRP and HOSR for one COP point (measured or predicted)."""

    mean_rsrp_dbm: float
    hosr_pct: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.mean_rsrp_dbm):
            raise ValueError(f"mean_rsrp_dbm must be finite, got {self.mean_rsrp_dbm}")
        if not 0.0 <= self.hosr_pct <= 100.0:
            raise ValueError(f"hosr_pct must be in [0, 100], got {self.hosr_pct}")
