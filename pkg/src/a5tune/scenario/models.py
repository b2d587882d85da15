# Copyright 2025 Christophe Roeder. All rights reserved.

"""Network geometry and radio configuration dataclasses."""

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

import numpy as np


class CellKind(str, Enum):
    """Antenna type of a cell."""

    MACRO_SECTOR = "macro_sector"
    SMALL_OMNI = "small_omni"


def _default_bandwidth() -> dict[str, float]:
    return {"1.7": 10.0, "2.1": 15.0, "3.5": 20.0}


def _default_prbs() -> dict[str, int]:
    return {"1.7": 52, "2.1": 78, "3.5": 106}


@dataclass(frozen=True)
class NetworkConfig:
    """Deployment and propagation parameters of the simulated network."""

    area_side_m: float = 2000.0
    n_macro_sites: int = 2
    sectors_per_site: int = 3
    macro_bands: tuple[float, ...] = (1.7, 2.1)  # GHz
    small_cells_per_site: int = 1
    small_band_ghz: float = 3.5
    macro_height_m: float = 30.0
    small_height_m: float = 20.0
    tx_power_dbm: float = 30.0  # Both tiers
    pathloss_exponent: float = 3.0
    shadowing_std_db: float = 4.0
    shadowing_corr_dist_m: float = 50.0
    # Carried for completeness; no implemented KPI depends on them
    bandwidth_mhz: dict[str, float] = field(default_factory=_default_bandwidth)
    prbs: dict[str, int] = field(default_factory=_default_prbs)

    def __post_init__(self) -> None:
        if self.area_side_m <= 0:
            raise ValueError(f"area_side_m must be positive, got {self.area_side_m}")
        if self.n_macro_sites < 1:
            raise ValueError(f"n_macro_sites must be >= 1, got {self.n_macro_sites}")
        if self.sectors_per_site < 1:
            raise ValueError(
                f"sectors_per_site must be >= 1, got {self.sectors_per_site}"
            )
        if not self.macro_bands:
            raise ValueError("macro_bands must not be empty")
        if any(b <= 0 for b in self.macro_bands) or self.small_band_ghz <= 0:
            raise ValueError("Carrier frequencies must be positive")
        if self.small_cells_per_site < 0:
            raise ValueError(
                f"small_cells_per_site must be >= 0, got {self.small_cells_per_site}"
            )
        if self.macro_height_m <= 0 or self.small_height_m <= 0:
            raise ValueError("Antenna heights must be positive")
        if self.pathloss_exponent <= 0:
            raise ValueError(
                f"pathloss_exponent must be positive, got {self.pathloss_exponent}"
            )
        if self.shadowing_std_db < 0:
            raise ValueError(
                f"shadowing_std_db must be >= 0, got {self.shadowing_std_db}"
            )
        if self.shadowing_corr_dist_m <= 0:
            raise ValueError(
                "shadowing_corr_dist_m must be positive, "
                f"got {self.shadowing_corr_dist_m}"
            )
        for name, table in (("bandwidth_mhz", self.bandwidth_mhz), ("prbs", self.prbs)):
            for band, value in table.items():
                if value <= 0:
                    raise ValueError(f"{name}[{band}] must be positive, got {value}")

    @property
    def bands(self) -> tuple[float, ...]:
        """All carrier frequencies in use, macro bands first."""
        if self.small_cells_per_site == 0:
            return tuple(self.macro_bands)
        return tuple(self.macro_bands) + (self.small_band_ghz,)


@dataclass(frozen=True)
class Cell:
    """A single transmitting cell (macro sector or small omni cell)."""

    id: int
    site_position: tuple[float, float]
    bearing_deg: float  # Counter-clockwise from +x; ignored for omni cells
    band_ghz: float
    tx_power_dbm: float
    height_m: float
    kind: CellKind

    def __post_init__(self) -> None:
        if not 0.0 <= self.bearing_deg < 360.0:
            raise ValueError(f"bearing_deg must be in [0, 360), got {self.bearing_deg}")


@dataclass(frozen=True)
class NetworkLayout:
    """Immutable cell geometry produced by build_layout."""

    cells: tuple[Cell, ...]
    config: NetworkConfig

    def __post_init__(self) -> None:
        ids = [c.id for c in self.cells]
        if len(set(ids)) != len(ids):
            raise ValueError("Cell ids must be unique")
        if ids != list(range(len(ids))):
            raise ValueError("Cell ids must be contiguous from 0")
        bands = set(self.config.bands)
        for cell in self.cells:
            if cell.band_ghz not in bands:
                raise ValueError(
                    f"Cell {cell.id} uses unconfigured band {cell.band_ghz}"
                )

    def __len__(self) -> int:
        return len(self.cells)

    @cached_property
    def site_xy(self) -> np.ndarray:
        """Cell site positions, shape (n_cells, 2)."""
        return np.array([c.site_position for c in self.cells], dtype=float)

    @cached_property
    def heights(self) -> np.ndarray:
        return np.array([c.height_m for c in self.cells], dtype=float)

    @cached_property
    def bearings(self) -> np.ndarray:
        return np.array([c.bearing_deg for c in self.cells], dtype=float)

    @cached_property
    def bands(self) -> np.ndarray:
        return np.array([c.band_ghz for c in self.cells], dtype=float)

    @cached_property
    def tx_powers(self) -> np.ndarray:
        return np.array([c.tx_power_dbm for c in self.cells], dtype=float)

    @cached_property
    def is_sector(self) -> np.ndarray:
        return np.array([c.kind == CellKind.MACRO_SECTOR for c in self.cells])
