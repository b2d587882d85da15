# Copyright 2025 Christophe Roeder. All rights reserved.

"""KPI reductions: mean RSRP and handover success rate."""

from typing import Sequence, Union

import numpy as np

from .models import HoCounters


def mean_rsrp(samples: Union[Sequence[float], np.ndarray]) -> float:
    """Arithmetic mean of RSRP samples in dBm (averaged in the dB domain)."""
    values = np.asarray(samples, dtype=float)
    if values.size == 0:
        raise ValueError("Cannot average an empty RSRP sample set")
    return float(values.mean())


def hosr(counters: HoCounters) -> float:
    """HOS / (HOS + HOF) * 100; 100 by convention when there were no attempts."""
    if counters.attempts == 0:
        return 100.0
    return 100.0 * counters.hos / counters.attempts
