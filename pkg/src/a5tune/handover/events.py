# Copyright 2025 Christophe Roeder. All rights reserved.

"""Entering conditions for events A5 and A3, TTT timers and HO resolution."""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Union

import numpy as np

from .models import EventConfig

Level = Union[float, np.ndarray]


class HoOutcome(str, Enum):
    SUCCESS = "success"
    FAILURE = "failure"


def a5_entering(
    serving_rsrp_dbm: Level,
    target_rsrp_dbm: Level,
    cfg: EventConfig,
    cio_db: Optional[Level] = None,
) -> Level:
    """
    A5: serving + hyst < threshold1 and target + cio - hyst > threshold2.

    Works elementwise on arrays. cio_db overrides cfg.cio_db (e.g. a per-cell
    vector broadcast against the target measurements).
    """
    cio = cfg.cio_db if cio_db is None else cio_db
    serving_weak = serving_rsrp_dbm + cfg.hyst_db < cfg.cop.th1_dbm
    target_strong = target_rsrp_dbm + cio - cfg.hyst_db > cfg.cop.th2_dbm
    return serving_weak & target_strong


def a3_entering(
    serving_rsrp_dbm: Level,
    target_rsrp_dbm: Level,
    cfg: EventConfig,
    cio_db: Optional[Level] = None,
) -> Level:
    """A3: target + cio > serving + offset + hyst (intra-frequency)."""
    cio = cfg.cio_db if cio_db is None else cio_db
    return target_rsrp_dbm + cio > serving_rsrp_dbm + cfg.a3_offset_db + cfg.hyst_db


@dataclass(frozen=True)
class TttTimer:
    """Contiguous time an entering condition has held."""

    ttt_ms: int
    elapsed_ms: int = 0

    @property
    def fired(self) -> bool:
        return self.elapsed_ms >= self.ttt_ms


def update_ttt(timer: TttTimer, condition_holds: bool, step_ms: int) -> TttTimer:
    """Accumulate while the condition holds; any miss resets to zero."""
    if condition_holds:
        return TttTimer(timer.ttt_ms, timer.elapsed_ms + step_ms)
    return TttTimer(timer.ttt_ms, 0)


def accumulate_ttt(
    elapsed_ms: np.ndarray, holds: np.ndarray, step_ms: int
) -> np.ndarray:
    """Array form of update_ttt over many (user, target) timers."""
    return np.where(holds, elapsed_ms + step_ms, 0)


def resolve_handover(
    serving_rsrp_trace: Sequence[float], cfg: EventConfig
) -> HoOutcome:
    """
    Classify an attempt from the serving RSRP over its execution window.

    The attempt fails if the serving link drops below the RLF threshold at any
    step between TTT expiry and the end of the execution delay.
    """
    if cfg.rlf_threshold_dbm is None:
        return HoOutcome.SUCCESS
    trace = np.asarray(serving_rsrp_trace, dtype=float)
    if np.any(trace < cfg.rlf_threshold_dbm):
        return HoOutcome.FAILURE
    return HoOutcome.SUCCESS
