# Copyright 2025 Christophe Roeder. All rights reserved.

"""Link budget: pathloss, antenna pattern, RSRP and serving-cell selection."""

import math
from typing import Optional

import numpy as np

from .models import Cell, CellKind, NetworkConfig, NetworkLayout
from .shadowing import ShadowField

SPEED_OF_LIGHT_MPS = 3.0e8
USER_HEIGHT_M = 1.5
MIN_DISTANCE_M = 1.0
SECTOR_BEAMWIDTH_DEG = 65.0
SECTOR_SLOPE_DB = 12.0
SECTOR_BACK_LOBE_DB = 25.0

Position = tuple[float, float]


def free_space_intercept_db(band_ghz: float) -> float:
    """Free-space loss at 1 m: 20*log10(4*pi*f/c)."""
    return 20.0 * math.log10(4.0 * math.pi * band_ghz * 1e9 / SPEED_OF_LIGHT_MPS)


def distance_3d_m(cell: Cell, pos: Position) -> float:
    """3-D distance from the cell antenna to a user at USER_HEIGHT_M, at least 1 m."""
    dx = pos[0] - cell.site_position[0]
    dy = pos[1] - cell.site_position[1]
    dz = cell.height_m - USER_HEIGHT_M
    return max(math.sqrt(dx * dx + dy * dy + dz * dz), MIN_DISTANCE_M)


def pathloss_db(cell: Cell, pos: Position, config: NetworkConfig) -> float:
    """Log-distance pathloss with a free-space intercept at 1 m."""
    d = distance_3d_m(cell, pos)
    slope = 10.0 * config.pathloss_exponent
    return free_space_intercept_db(cell.band_ghz) + slope * math.log10(d)


def _wrap_degrees(angle: float) -> float:
    return (angle + 180.0) % 360.0 - 180.0


def sector_gain_db(theta_deg: float) -> float:
    """Horizontal sector pattern A(theta) = -min(12 * (theta / 65)^2, 25)."""
    attenuation = SECTOR_SLOPE_DB * (theta_deg / SECTOR_BEAMWIDTH_DEG) ** 2
    return -min(attenuation, SECTOR_BACK_LOBE_DB)


def antenna_gain_db(cell: Cell, pos: Position) -> float:
    """Antenna gain towards a position; 0 dB for omni cells."""
    if cell.kind == CellKind.SMALL_OMNI:
        return 0.0
    dx = pos[0] - cell.site_position[0]
    dy = pos[1] - cell.site_position[1]
    azimuth = math.degrees(math.atan2(dy, dx))
    return sector_gain_db(_wrap_degrees(azimuth - cell.bearing_deg))


def rsrp_dbm(
    cell: Cell,
    pos: Position,
    shadow: Optional[ShadowField],
    config: NetworkConfig,
) -> float:
    """Received power from one cell: tx - pathloss + antenna gain + shadowing."""
    value = cell.tx_power_dbm - pathloss_db(cell, pos, config)
    value += antenna_gain_db(cell, pos)
    if shadow is not None:
        value += shadow.value(cell.id, pos)
    return value


def best_server(
    layout: NetworkLayout, pos: Position, shadow: Optional[ShadowField]
) -> int:
    """Id of the strongest cell at a position; ties go to the lowest id."""
    if not layout.cells:
        raise ValueError("Layout has no cells")
    best_id = layout.cells[0].id
    best_value = -math.inf
    for cell in layout.cells:
        value = rsrp_dbm(cell, pos, shadow, layout.config)
        if value > best_value:
            best_id, best_value = cell.id, value
    return best_id


def rsrp_matrix(
    layout: NetworkLayout,
    positions: np.ndarray,
    shadow: Optional[ShadowField],
) -> np.ndarray:
    """
    RSRP for every (position, cell) pair.

    Elementwise equal (to floating-point tolerance) to rsrp_dbm.

    Args:
        layout: Network layout
        positions: Array of shape (n_positions, 2)
        shadow: Shadow field, or None for no shadowing

    Returns:
        Array of shape (n_positions, n_cells) in dBm
    """
    positions = np.atleast_2d(np.asarray(positions, dtype=float))
    delta = positions[:, None, :] - layout.site_xy[None, :, :]
    dz = layout.heights - USER_HEIGHT_M
    d = np.sqrt(delta[..., 0] ** 2 + delta[..., 1] ** 2 + dz[None, :] ** 2)
    d = np.maximum(d, MIN_DISTANCE_M)

    intercept = 20.0 * np.log10(4.0 * np.pi * layout.bands * 1e9 / SPEED_OF_LIGHT_MPS)
    loss = intercept[None, :] + 10.0 * layout.config.pathloss_exponent * np.log10(d)

    azimuth = np.degrees(np.arctan2(delta[..., 1], delta[..., 0]))
    theta = (azimuth - layout.bearings[None, :] + 180.0) % 360.0 - 180.0
    gain = -np.minimum(
        SECTOR_SLOPE_DB * (theta / SECTOR_BEAMWIDTH_DEG) ** 2, SECTOR_BACK_LOBE_DB
    )
    gain = np.where(layout.is_sector[None, :], gain, 0.0)

    result = layout.tx_powers[None, :] - loss + gain
    if shadow is not None:
        result = result + shadow.values(positions)
    return result
