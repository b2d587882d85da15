# Copyright 2025 Christophe Roeder. All rights reserved.

"""Network geometry and radio propagation model."""

from .layout import build_layout, site_positions
from .models import Cell, CellKind, NetworkConfig, NetworkLayout
from .radio import (
    antenna_gain_db,
    best_server,
    free_space_intercept_db,
    pathloss_db,
    rsrp_dbm,
    rsrp_matrix,
)
from .shadowing import SHADOW_COMPONENTS, ShadowField

__all__ = [
    "NetworkConfig",
    "Cell",
    "CellKind",
    "NetworkLayout",
    "ShadowField",
    "SHADOW_COMPONENTS",
    "build_layout",
    "site_positions",
    "pathloss_db",
    "antenna_gain_db",
    "rsrp_dbm",
    "best_server",
    "rsrp_matrix",
    "free_space_intercept_db",
]
