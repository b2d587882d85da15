# Copyright 2025 Christophe Roeder. All rights reserved.

"""Random-waypoint mobility with exact step lengths."""

import logging
import math
from dataclasses import replace

import numpy as np

from ..streams import MOBILITY_STREAM, stream_rng
from .models import KMH_TO_MPS, MobilityConfig, User

logger = logging.getLogger(__name__)


def user_count(mob: MobilityConfig, area_side_m: float) -> int:
    """Number of users for a square area: round(density * km^2)."""
    if area_side_m <= 0:
        raise ValueError(f"Area side must be positive, got {area_side_m}")
    area_km2 = (area_side_m / 1000.0) ** 2
    return int(round(mob.user_density_per_km2 * area_km2))


def draw_waypoint(rng: np.random.Generator, area_side_m: float) -> tuple[float, float]:
    """Uniform destination inside the square area."""
    x, y = rng.uniform(0.0, area_side_m, 2)
    return (float(x), float(y))


def spawn_users(
    mob: MobilityConfig, area_side_m: float, rng: np.random.Generator
) -> list[User]:
    """
    Place users uniformly with speeds drawn uniformly from the speed set.

    Args:
        mob: Mobility configuration
        area_side_m: Side length of the square area
        rng: Generator for positions, waypoints and speeds

    Returns:
        List of round(density * area_km2) users with ids 0..n-1
    """
    n = user_count(mob, area_side_m)
    positions = rng.uniform(0.0, area_side_m, (n, 2))
    waypoints = rng.uniform(0.0, area_side_m, (n, 2))
    speed_idx = rng.integers(0, len(mob.speed_set_kmh), n)
    users = [
        User(
            id=i,
            position=(float(positions[i, 0]), float(positions[i, 1])),
            speed_mps=mob.speed_set_kmh[speed_idx[i]] * KMH_TO_MPS,
            waypoint=(float(waypoints[i, 0]), float(waypoints[i, 1])),
        )
        for i in range(n)
    ]
    logger.debug(f"Spawned {n} users over {area_side_m:g} m square")
    return users


def advance(
    user: User,
    dt_s: float,
    area_side_m: float,
    rng: np.random.Generator,
    pause_s: float = 0.0,
) -> User:
    """
    Move a user along its waypoint path for dt_s seconds.

    On arrival (remaining distance <= step), a fresh waypoint is drawn and the
    residual travel is spent towards it, so each step covers exactly
    speed * dt_s unless a pause intervenes.
    """
    if dt_s <= 0:
        raise ValueError(f"dt_s must be positive, got {dt_s}")

    x, y = user.position
    wx, wy = user.waypoint
    pause_left = user.pause_left_s
    time_left = dt_s

    while time_left > 0.0:
        if pause_left > 0.0:
            if pause_left >= time_left:
                pause_left -= time_left
                break
            time_left -= pause_left
            pause_left = 0.0

        budget = user.speed_mps * time_left
        dist = math.hypot(wx - x, wy - y)
        if dist > budget:
            frac = budget / dist
            x += (wx - x) * frac
            y += (wy - y) * frac
            break

        # Arrived: spend the residual towards a new waypoint
        x, y = wx, wy
        time_left = max(time_left - dist / user.speed_mps, 0.0)
        wx, wy = draw_waypoint(rng, area_side_m)
        pause_left = pause_s

    return replace(user, position=(x, y), waypoint=(wx, wy), pause_left_s=pause_left)


class MobilityState:
    """
    Array view of a user population for stepping many users at once.

    Users that only travel along their current segment are moved in bulk;
    users that arrive or pause fall back to advance() with their own stream.
    """

    def __init__(
        self, users: list[User], seed: int, area_side_m: float, pause_s: float
    ):
        self.area_side_m = area_side_m
        self.pause_s = pause_s
        self.ids = np.array([u.id for u in users], dtype=int)
        self.positions = np.array([u.position for u in users], float).reshape(-1, 2)
        self.waypoints = np.array([u.waypoint for u in users], float).reshape(-1, 2)
        self.speeds = np.array([u.speed_mps for u in users], dtype=float)
        self.pause_left = np.array([u.pause_left_s for u in users], dtype=float)
        self._rngs = [stream_rng(seed, MOBILITY_STREAM, int(uid)) for uid in self.ids]

    def step(self, dt_s: float) -> None:
        """Advance every user by dt_s seconds."""
        delta = self.waypoints - self.positions
        dist = np.hypot(delta[:, 0], delta[:, 1])
        budget = self.speeds * dt_s
        simple = (self.pause_left <= 0.0) & (dist > budget)

        frac = np.where(simple, budget / np.where(dist > 0, dist, 1.0), 0.0)
        self.positions += delta * frac[:, None]

        for i in np.flatnonzero(~simple):
            user = User(
                id=int(self.ids[i]),
                position=(float(self.positions[i, 0]), float(self.positions[i, 1])),
                speed_mps=float(self.speeds[i]),
                waypoint=(float(self.waypoints[i, 0]), float(self.waypoints[i, 1])),
                pause_left_s=float(self.pause_left[i]),
            )
            moved = advance(user, dt_s, self.area_side_m, self._rngs[i], self.pause_s)
            self.positions[i] = moved.position
            self.waypoints[i] = moved.waypoint
            self.pause_left[i] = moved.pause_left_s
