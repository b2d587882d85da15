# Copyright 2025 Christophe Roeder. All rights reserved.

"""Deterministic placement of macro sites, sectors and small cells."""

import logging
import math

from .models import Cell, CellKind, NetworkConfig, NetworkLayout

logger = logging.getLogger(__name__)

SMALL_CELL_OFFSET_M = 300.0
SMALL_CELL_BEARING_DEG = 60.0


def site_positions(config: NetworkConfig) -> list[tuple[float, float]]:
    """
    Return macro site positions spread evenly along the horizontal midline.

    With two sites this yields (side/3, side/2) and (2*side/3, side/2).
    """
    side = config.area_side_m
    n = config.n_macro_sites
    return [(side * (i + 1) / (n + 1), side / 2.0) for i in range(n)]


def build_layout(config: NetworkConfig) -> NetworkLayout:
    """
    Build the static cell layout for a network configuration.

    Cell ids are assigned macro sectors first (site, band, sector order),
    then small cells (site, index order).

    Args:
        config: Validated network configuration

    Returns:
        NetworkLayout with n_sites*sectors*bands + n_sites*small_cells cells
    """
    cells: list[Cell] = []
    sites = site_positions(config)
    sector_step = 360.0 / config.sectors_per_site

    for site in sites:
        for band in config.macro_bands:
            for sector in range(config.sectors_per_site):
                cells.append(
                    Cell(
                        id=len(cells),
                        site_position=site,
                        bearing_deg=(sector * sector_step) % 360.0,
                        band_ghz=band,
                        tx_power_dbm=config.tx_power_dbm,
                        height_m=config.macro_height_m,
                        kind=CellKind.MACRO_SECTOR,
                    )
                )

    for site in sites:
        for k in range(config.small_cells_per_site):
            bearing = SMALL_CELL_BEARING_DEG + k * 360.0 / config.small_cells_per_site
            rad = math.radians(bearing)
            position = (
                site[0] + SMALL_CELL_OFFSET_M * math.cos(rad),
                site[1] + SMALL_CELL_OFFSET_M * math.sin(rad),
            )
            cells.append(
                Cell(
                    id=len(cells),
                    site_position=position,
                    bearing_deg=0.0,
                    band_ghz=config.small_band_ghz,
                    tx_power_dbm=config.tx_power_dbm,
                    height_m=config.small_height_m,
                    kind=CellKind.SMALL_OMNI,
                )
            )

    logger.debug(f"Built layout with {len(cells)} cells across {len(sites)} sites")
    return NetworkLayout(cells=tuple(cells), config=config)
