# Copyright 2025 Christophe Roeder. All rights reserved.

"""CSV writer for per-run handover event traces."""

import csv
from pathlib import Path
from typing import Iterable, Union

from .simulation import EventRecord

EVENT_TRACE_HEADERS = [
    "step",
    "user_id",
    "event",
    "source_cell",
    "target_cell",
    "serving_rsrp",
]


def write_event_trace(events: Iterable[EventRecord], path: Union[str, Path]) -> int:
    """
    Write event records to a CSV file.

    Args:
        events: Records in the order they were produced
        path: Output CSV path; parent directories are created

    Returns:
        Number of rows written
    """
    filepath = Path(path)
    filepath.parent.mkdir(parents=True, exist_ok=True)

    count = 0
    with open(filepath, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(EVENT_TRACE_HEADERS)
        for event in events:
            writer.writerow(
                [
                    event.step,
                    event.user_id,
                    event.event,
                    event.source_cell,
                    event.target_cell,
                    f"{event.serving_rsrp:.6f}",
                ]
            )
            count += 1
    return count
