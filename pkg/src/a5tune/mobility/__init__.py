# Copyright 2025 Christophe Roeder. All rights reserved.

"""User placement and random-waypoint mobility."""

from .models import KMH_TO_MPS, MobilityConfig, User
from .waypoint import MobilityState, advance, draw_waypoint, spawn_users, user_count

__all__ = [
    "MobilityConfig",
    "User",
    "KMH_TO_MPS",
    "MobilityState",
    "spawn_users",
    "advance",
    "draw_waypoint",
    "user_count",
]
