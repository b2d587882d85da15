# Copyright 2025 Christophe Roeder. All rights reserved.

"""Discrete-time handover simulation: radio trace generation and event replay."""

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..mobility import MobilityConfig, MobilityState, spawn_users
from ..scenario import SHADOW_COMPONENTS, NetworkLayout, ShadowField, rsrp_matrix
from ..streams import SPAWN_STREAM, stream_rng
from .events import (
    HoOutcome,
    a3_entering,
    a5_entering,
    accumulate_ttt,
    resolve_handover,
)
from .kpi import hosr, mean_rsrp
from .models import EventConfig, HoCounters, KpiSample

logger = logging.getLogger(__name__)

EVENT_A5_TRIGGER = "a5_trigger"
EVENT_HO_SUCCESS = "ho_success"
EVENT_HO_FAIL = "ho_fail"
EVENT_A3_HO = "a3_ho"


@dataclass(frozen=True)
class SimulationConfig:
    """Time base of one simulation run."""

    duration_s: float = 120.0
    step_ms: int = 32
    warmup_s: float = 10.0
    shadow_components: int = SHADOW_COMPONENTS

    def __post_init__(self) -> None:
        if self.duration_s <= 0:
            raise ValueError(f"duration_s must be positive, got {self.duration_s}")
        if self.step_ms <= 0:
            raise ValueError(f"step_ms must be positive, got {self.step_ms}")
        if self.warmup_s < 0:
            raise ValueError(f"warmup_s must be >= 0, got {self.warmup_s}")
        if self.shadow_components < 1:
            raise ValueError("shadow_components must be >= 1")
        if self.n_steps < 1:
            raise ValueError("duration_s is shorter than one step")
        if self.warmup_steps >= self.n_steps:
            raise ValueError(
                f"warmup_s={self.warmup_s} leaves no steps of "
                f"duration_s={self.duration_s}"
            )

    @property
    def n_steps(self) -> int:
        return int(round(self.duration_s * 1000.0 / self.step_ms))

    @property
    def warmup_steps(self) -> int:
        return int(round(self.warmup_s * 1000.0 / self.step_ms))


@dataclass(frozen=True)
class RadioTrace:
    """
    RSRP of every user towards every cell over a run.

    Row 0 of rsrp is the snapshot at spawn time (used for initial attachment);
    row k is the snapshot after k mobility steps.
    """

    rsrp: np.ndarray  # (n_steps + 1, n_users, n_cells)
    cell_bands: np.ndarray
    step_ms: int
    warmup_steps: int

    @property
    def n_steps(self) -> int:
        return self.rsrp.shape[0] - 1

    @property
    def n_users(self) -> int:
        return self.rsrp.shape[1]

    @property
    def n_cells(self) -> int:
        return self.rsrp.shape[2]


@dataclass(frozen=True)
class EventRecord:
    """One row of the optional per-run event trace."""

    step: int
    user_id: int
    event: str
    source_cell: int
    target_cell: int
    serving_rsrp: float


@dataclass
class SimulationResult:
    kpi: KpiSample
    counters: HoCounters
    events: list[EventRecord] = field(default_factory=list)


def trace_radio(
    layout: NetworkLayout,
    mob_cfg: MobilityConfig,
    seed: int,
    sim_cfg: SimulationConfig,
) -> RadioTrace:
    """
    Move users for a whole run and record RSRP towards all cells.

    Neither mobility nor propagation depends on the A5 parameters, so one
    trace serves every COP point simulated with the same seed.
    """
    config = layout.config
    users = spawn_users(mob_cfg, config.area_side_m, stream_rng(seed, SPAWN_STREAM))
    if not users:
        raise ValueError("Scenario has zero users; increase user density or area")

    shadow: Optional[ShadowField] = None
    if config.shadowing_std_db > 0:
        shadow = ShadowField(
            config.shadowing_std_db,
            config.shadowing_corr_dist_m,
            seed,
            len(layout),
            sim_cfg.shadow_components,
        )

    state = MobilityState(users, seed, config.area_side_m, mob_cfg.pause_s)
    dt_s = sim_cfg.step_ms / 1000.0
    rsrp = np.empty((sim_cfg.n_steps + 1, len(users), len(layout)))
    rsrp[0] = rsrp_matrix(layout, state.positions, shadow)
    for k in range(1, sim_cfg.n_steps + 1):
        state.step(dt_s)
        rsrp[k] = rsrp_matrix(layout, state.positions, shadow)

    logger.debug(
        f"Traced {len(users)} users x {len(layout)} cells over {sim_cfg.n_steps} steps "
        f"(seed {seed})"
    )
    return RadioTrace(
        rsrp=rsrp,
        cell_bands=layout.bands.copy(),
        step_ms=sim_cfg.step_ms,
        warmup_steps=sim_cfg.warmup_steps,
    )


def l3_filter(rsrp: np.ndarray, k: int) -> np.ndarray:
    """Layer-3 filter F_n = (1 - a) F_{n-1} + a M_n with a = 1 / 2^(k/4)."""
    if k == 0:
        return rsrp
    a = 1.0 / 2.0 ** (k / 4.0)
    out = np.empty_like(rsrp)
    out[0] = rsrp[0]
    for n in range(1, rsrp.shape[0]):
        out[n] = (1.0 - a) * out[n - 1] + a * rsrp[n]
    return out


def replay_events(
    trace: RadioTrace, cfg: EventConfig, record_events: bool = False
) -> SimulationResult:
    """
    Run the A3/A5 event engine over a precomputed radio trace.

    Per step: progress execution windows, evaluate A5 towards other-carrier
    cells and A3 towards same-carrier cells, fire timers, then sample every
    user's serving RSRP. Only A5 attempts triggered after warm-up feed the
    HO counters; A3 handovers execute immediately and are counted separately.
    An attempt whose execution window is cut short by the end of the run is
    resolved on the part of the window that was simulated.
    """
    cfg.check_step(trace.step_ms)
    step_ms = trace.step_ms
    exec_steps = cfg.exec_delay_ms // step_ms
    measured = l3_filter(trace.rsrp, cfg.l3_filter_k)

    n_users, n_cells = trace.n_users, trace.n_cells
    users = np.arange(n_users)
    cells = np.arange(n_cells)
    same_carrier = trace.cell_bands[:, None] == trace.cell_bands[None, :]
    cio = np.array([cfg.cio_for(c) for c in range(n_cells)])[None, :]

    serving = np.argmax(trace.rsrp[0], axis=1)
    a5_elapsed = np.zeros((n_users, n_cells), dtype=int)
    a3_elapsed = np.zeros((n_users, n_cells), dtype=int)
    pending_target = np.full(n_users, -1)
    pending_left = np.zeros(n_users, dtype=int)
    pending_counted = np.zeros(n_users, dtype=bool)
    windows: dict[int, list[float]] = {}

    counters = HoCounters()
    events: list[EventRecord] = []
    samples = np.empty((trace.n_steps - trace.warmup_steps, n_users))

    def log_event(k: int, i: int, name: str, source: int, target: int, level: float):
        if record_events:
            events.append(
                EventRecord(k, int(i), name, int(source), int(target), float(level))
            )

    def resolve(k: int, i: int, true_row: np.ndarray) -> None:
        outcome = resolve_handover(windows.pop(i), cfg)
        source = int(serving[i])
        target = int(pending_target[i])
        if outcome == HoOutcome.SUCCESS:
            serving[i] = target
            log_event(k, i, EVENT_HO_SUCCESS, source, target, true_row[source])
        else:
            # Radio link failure: re-establish on the strongest cell
            serving[i] = int(np.argmax(true_row))
            log_event(k, i, EVENT_HO_FAIL, source, target, true_row[source])
        if pending_counted[i]:
            counters.record(outcome == HoOutcome.SUCCESS)
        pending_target[i] = -1
        a5_elapsed[i] = 0
        a3_elapsed[i] = 0

    for k in range(1, trace.n_steps + 1):
        true = trace.rsrp[k]
        meas = measured[k]
        counted = k > trace.warmup_steps
        serving_true = true[users, serving]

        # Execution windows opened on earlier steps
        resolved = np.zeros(n_users, dtype=bool)
        for i in np.flatnonzero(pending_target >= 0):
            windows[i].append(float(serving_true[i]))
            pending_left[i] -= 1
            if pending_left[i] <= 0:
                resolve(k, i, true[i])
                resolved[i] = True

        active = (pending_target < 0) & ~resolved
        serving_meas = meas[users, serving][:, None]
        other = ~same_carrier[serving] & active[:, None]
        neighbour = same_carrier[serving] & (cells[None, :] != serving[:, None])
        neighbour &= active[:, None]

        a5_holds = a5_entering(serving_meas, meas, cfg, cio_db=cio) & other
        a3_holds = a3_entering(serving_meas, meas, cfg, cio_db=cio) & neighbour
        a5_elapsed = accumulate_ttt(a5_elapsed, a5_holds, step_ms)
        a3_elapsed = accumulate_ttt(a3_elapsed, a3_holds, step_ms)
        a5_fired = a5_holds & (a5_elapsed >= cfg.cop.ttt_ms)
        a3_fired = a3_holds & (a3_elapsed >= cfg.a3_ttt_ms)

        a5_users = a5_fired.any(axis=1)
        for i in np.flatnonzero(a5_users):
            target = int(np.argmax(np.where(a5_fired[i], meas[i], -np.inf)))
            source = int(serving[i])
            log_event(k, i, EVENT_A5_TRIGGER, source, target, true[i, source])
            pending_target[i] = target
            pending_left[i] = exec_steps
            pending_counted[i] = counted
            windows[i] = [float(true[i, source])]
            a5_elapsed[i] = 0
            a3_elapsed[i] = 0
            if exec_steps == 0:
                resolve(k, i, true[i])

        for i in np.flatnonzero(a3_fired.any(axis=1) & ~a5_users):
            target = int(np.argmax(np.where(a3_fired[i], meas[i], -np.inf)))
            source = int(serving[i])
            log_event(k, i, EVENT_A3_HO, source, target, true[i, source])
            serving[i] = target
            if counted:
                counters.a3_handovers += 1
            a5_elapsed[i] = 0
            a3_elapsed[i] = 0

        if counted:
            samples[k - trace.warmup_steps - 1] = true[users, serving]

    # Attempts still executing at the end are resolved on the partial window
    final = trace.rsrp[trace.n_steps]
    for i in np.flatnonzero(pending_target >= 0):
        resolve(trace.n_steps, i, final[i])

    kpi = KpiSample(mean_rsrp_dbm=mean_rsrp(samples), hosr_pct=hosr(counters))
    return SimulationResult(kpi=kpi, counters=counters, events=events)


def simulate(
    layout: NetworkLayout,
    mob_cfg: MobilityConfig,
    event_cfg: EventConfig,
    seed: int,
    sim_cfg: Optional[SimulationConfig] = None,
    record_events: bool = False,
) -> SimulationResult:
    """Trace and replay in one call, keeping the event log if requested."""
    sim_cfg = sim_cfg or SimulationConfig()
    event_cfg.check_step(sim_cfg.step_ms)
    trace = trace_radio(layout, mob_cfg, seed, sim_cfg)
    return replay_events(trace, event_cfg, record_events=record_events)


def run_simulation(
    layout: NetworkLayout,
    mob_cfg: MobilityConfig,
    event_cfg: EventConfig,
    seed: int,
    sim_cfg: Optional[SimulationConfig] = None,
) -> tuple[KpiSample, HoCounters]:
    """
    Simulate one COP point and return its KPIs and A5 attempt counters.

    Fully deterministic given the configuration and seed.
    """
    result = simulate(layout, mob_cfg, event_cfg, seed, sim_cfg)
    return result.kpi, result.counters
