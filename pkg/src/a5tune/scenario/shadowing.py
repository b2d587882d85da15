# Copyright 2025 Christophe Roeder. All rights reserved.

"""Spatially correlated log-normal shadowing."""

import math

import numpy as np

from ..streams import SHADOW_STREAM, stream_rng

SHADOW_COMPONENTS = 512

# Plane waves sharing one radial wave number, evenly spaced in direction
ANGLE_SLOTS = 16


class ShadowField:
    """
    Per-cell Gaussian shadowing field (in dB) with exponential autocorrelation.

    Each cell's field is a sum of random-phase plane waves whose wave numbers
    follow the 2-D spectrum of exp(-r / corr_dist). Wave numbers are drawn
    stratified over that spectrum, in groups of up to ANGLE_SLOTS waves that
    share a magnitude and point in evenly spaced directions. The marginal
    standard deviation is std_db, and the exp(-r / corr_dist) autocorrelation
    holds within a single realization along any direction. Values are a pure
    function of (seed, cell id, position), so any position can be queried in
    any order.
    """

    def __init__(
        self,
        std_db: float,
        corr_dist_m: float,
        seed: int,
        n_cells: int,
        n_components: int = SHADOW_COMPONENTS,
    ):
        if std_db < 0:
            raise ValueError(f"std_db must be >= 0, got {std_db}")
        if corr_dist_m <= 0:
            raise ValueError(f"corr_dist_m must be positive, got {corr_dist_m}")
        if n_components < 1:
            raise ValueError(f"n_components must be >= 1, got {n_components}")

        self.std_db = float(std_db)
        self.corr_dist_m = float(corr_dist_m)
        self.seed = seed
        self.n_cells = n_cells
        self.n_components = n_components
        self._amplitude = self.std_db * np.sqrt(2.0 / n_components)

        n_angles = math.gcd(n_components, ANGLE_SLOTS)
        n_groups = n_components // n_angles
        slots = 2.0 * np.pi * np.arange(n_angles) / n_angles
        wavevectors = np.empty((n_cells, n_components, 2))
        phases = np.empty((n_cells, n_components))
        for cell_id in range(n_cells):
            rng = stream_rng(seed, SHADOW_STREAM, cell_id)
            u = (np.arange(n_groups) + rng.random(n_groups)) / n_groups
            # Inverse CDF of the radial wave-number density k / (1 + d^2 k^2)^(3/2)
            k = np.sqrt(1.0 / (1.0 - u) ** 2 - 1.0) / self.corr_dist_m
            rotation = rng.uniform(0.0, 2.0 * np.pi, n_groups)
            k = np.repeat(k, n_angles)
            angle = (rotation[:, None] + slots[None, :]).reshape(-1)
            wavevectors[cell_id, :, 0] = k * np.cos(angle)
            wavevectors[cell_id, :, 1] = k * np.sin(angle)
            phases[cell_id] = rng.uniform(0.0, 2.0 * np.pi, n_components)

        self._wavevectors = wavevectors
        self._phases = phases

    @classmethod
    def disabled(cls, n_cells: int) -> "ShadowField":
        """Return a field that is identically zero."""
        return cls(0.0, 1.0, 0, n_cells, n_components=1)

    def value(self, cell_id: int, position: tuple[float, float]) -> float:
        """Shadowing in dB for one cell at one position."""
        if self.std_db == 0.0:
            return 0.0
        pos = np.asarray(position, dtype=float)
        arg = self._wavevectors[cell_id] @ pos + self._phases[cell_id]
        return float(self._amplitude * np.cos(arg).sum())

    def values(self, positions: np.ndarray) -> np.ndarray:
        """
        Shadowing for every (position, cell) pair.

        Args:
            positions: Array of shape (n_positions, 2)

        Returns:
            Array of shape (n_positions, n_cells) in dB
        """
        positions = np.atleast_2d(np.asarray(positions, dtype=float))
        if self.std_db == 0.0:
            return np.zeros((positions.shape[0], self.n_cells))
        arg = np.einsum("pd,cmd->pcm", positions, self._wavevectors) + self._phases
        return self._amplitude * np.cos(arg).sum(axis=2)
