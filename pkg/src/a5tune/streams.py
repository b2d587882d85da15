# Copyright 2025 Christophe Roeder. All rights reserved.

"""Named random streams derived from a run seed."""

import numpy as np

SPAWN_STREAM = 1
MOBILITY_STREAM = 2
SHADOW_STREAM = 3


def stream_rng(seed: int, stream: int, index: int = 0) -> np.random.Generator:
    """
    Return an independent generator for (seed, stream, index).

    The same triple always yields the same sequence, so users and cells get
    their own reproducible streams regardless of evaluation order.
    """
    if seed < 0:
        raise ValueError(f"Seed must be non-negative, got {seed}")
    return np.random.default_rng([seed, stream, index])
