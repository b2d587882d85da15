# Copyright 2025 Christophe Roeder. All rights reserved.

"""User mobility dataclasses."""

from dataclasses import dataclass

KMH_TO_MPS = 1.0 / 3.6


@dataclass(frozen=True)
class MobilityConfig:
    """User population and random-waypoint parameters."""

    user_density_per_km2: float = 15.0
    speed_set_kmh: tuple[float, ...] = (3.0, 60.0, 120.0, 240.0)
    pause_s: float = 0.0

    def __post_init__(self) -> None:
        if self.user_density_per_km2 <= 0:
            raise ValueError(
                "user_density_per_km2 must be positive, "
                f"got {self.user_density_per_km2}"
            )
        if not self.speed_set_kmh:
            raise ValueError("speed_set_kmh must not be empty")
        if any(v <= 0 for v in self.speed_set_kmh):
            raise ValueError(f"Speeds must be positive, got {self.speed_set_kmh}")
        if self.pause_s < 0:
            raise ValueError(f"pause_s must be >= 0, got {self.pause_s}")


@dataclass(frozen=True)
class User:
    """A mobile user; advance() returns a new record rather than mutating."""

    id: int
    position: tuple[float, float]
    speed_mps: float
    waypoint: tuple[float, float]
    pause_left_s: float = 0.0
