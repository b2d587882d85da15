# Copyright 2025 Christophe Roeder. All rights reserved.

"""A5/A3 event engine, handover resolution and KPI computation."""

from .events import (
    HoOutcome,
    TttTimer,
    a3_entering,
    a5_entering,
    accumulate_ttt,
    resolve_handover,
    update_ttt,
)
from .kpi import hosr, mean_rsrp
from .models import (
    DEFAULT_COP,
    THRESHOLD_MAX_DBM,
    THRESHOLD_MIN_DBM,
    TTT_VALUES_MS,
    CopVector,
    EventConfig,
    HoCounters,
    KpiSample,
)
from .simulation import (
    EventRecord,
    RadioTrace,
    SimulationConfig,
    SimulationResult,
    l3_filter,
    replay_events,
    run_simulation,
    simulate,
    trace_radio,
)
from .trace import EVENT_TRACE_HEADERS, write_event_trace

__all__ = [
    "CopVector",
    "EventConfig",
    "HoCounters",
    "KpiSample",
    "DEFAULT_COP",
    "TTT_VALUES_MS",
    "THRESHOLD_MIN_DBM",
    "THRESHOLD_MAX_DBM",
    "HoOutcome",
    "TttTimer",
    "a5_entering",
    "a3_entering",
    "update_ttt",
    "accumulate_ttt",
    "resolve_handover",
    "mean_rsrp",
    "hosr",
    "SimulationConfig",
    "RadioTrace",
    "EventRecord",
    "SimulationResult",
    "trace_radio",
    "l3_filter",
    "replay_events",
    "simulate",
    "run_simulation",
    "EVENT_TRACE_HEADERS",
    "write_event_trace",
]
