# Copyright 2025 Christophe Roeder. All rights reserved.

"""COP grid enumeration."""

from itertools import product

from ..handover import CopVector
from .models import SweepSpec, range_values


def cop_grid(spec: SweepSpec) -> list[CopVector]:
    """Cartesian product of the spec's axes in lexicographic (ttt, th1, th2) order."""
    ttt_values = sorted(spec.ttt_values)
    th1_values = range_values(spec.th1_range)
    th2_values = range_values(spec.th2_range)
    if not (ttt_values and th1_values and th2_values):
        raise ValueError("COP grid is empty")
    return [
        CopVector(ttt, th1, th2)
        for ttt, th1, th2 in product(ttt_values, th1_values, th2_values)
    ]


def grid_size(spec: SweepSpec) -> int:
    return (
        len(spec.ttt_values)
        * len(range_values(spec.th1_range))
        * len(range_values(spec.th2_range))
    )
