# Copyright 2025 Christophe Roeder. All rights reserved.

"""Pytest fixtures for a5tune tests."""

from pathlib import Path
from typing import Callable

import numpy as np
import pytest
import yaml

from a5tune.handover import SimulationConfig
from a5tune.scenario import NetworkConfig
from a5tune.sweep import CopMeans, Scenario, SweepSpec, cop_grid

SMALL_CONFIG = {
    "network": {"area_side_m": 1000.0},
    "simulation": {
        "duration_s": 6.4,
        "step_ms": 32,
        "warmup_s": 1.6,
        "shadow_components": 8,
    },
    "sweep": {
        "ttt_values": [64, 128],
        "th1_range": [-110, -100, 5],
        "th2_range": [-110, -100, 5],
        "seeds": [1, 2],
    },
    "surrogate": {
        "kinds": ["linear", "gbt"],
        "hyperparams": {"gbt": {"n_rounds": 20}},
    },
    "sobol": {"n_base": 256},
}


class FunctionModel:
    """Predictor stand-in that evaluates a function of the COP columns."""

    def __init__(self, fn: Callable[[np.ndarray], np.ndarray]):
        self.fn = fn

    def predict_many(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        return np.asarray(self.fn(X), dtype=float)


@pytest.fixture
def short_simulation() -> SimulationConfig:
    """Return a 6.4 s run with 1.6 s warm-up (200 steps of 32 ms)."""
    return SimulationConfig(
        duration_s=6.4, step_ms=32, warmup_s=1.6, shadow_components=8
    )


@pytest.fixture
def small_scenario(short_simulation: SimulationConfig) -> Scenario:
    """Return a 1 km square scenario (15 users) with a short run."""
    return Scenario(
        network=NetworkConfig(area_side_m=1000.0), simulation=short_simulation
    )


@pytest.fixture
def small_spec() -> SweepSpec:
    """Return an 18-point COP grid with two seeds."""
    return SweepSpec(
        ttt_values=(64, 128),
        th1_range=(-110, -100, 5),
        th2_range=(-110, -100, 5),
        seeds=(1, 2),
    )


@pytest.fixture
def make_points() -> Callable[..., CopMeans]:
    """Return a factory of seed-averaged points with synthetic KPIs."""

    def build(
        rsrp: Callable[[np.ndarray], np.ndarray],
        hosr: Callable[[np.ndarray], np.ndarray],
        spec: SweepSpec = SweepSpec(),
    ) -> CopMeans:
        cops = tuple(cop_grid(spec))
        X = np.array([c.as_tuple() for c in cops], dtype=float)
        return CopMeans(
            cops=cops,
            mean_rsrp_dbm=np.asarray(rsrp(X), dtype=float),
            hosr_pct=np.asarray(hosr(X), dtype=float),
        )

    return build


@pytest.fixture
def make_predictor() -> Callable[[Callable[[np.ndarray], np.ndarray]], FunctionModel]:
    """Return a factory wrapping a function of the COP columns as a predictor."""
    return FunctionModel


@pytest.fixture
def small_config_file(tmp_path: Path) -> Path:
    """Return path to a YAML config describing the small scenario and sweep."""
    path = tmp_path / "scenario.yaml"
    path.write_text(yaml.safe_dump(SMALL_CONFIG), encoding="utf-8")
    return path
