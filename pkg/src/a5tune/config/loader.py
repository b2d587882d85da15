# Copyright 2025 Christophe Roeder. All rights reserved.

"""Toolkit configuration from a JSON or YAML file."""

import json
import logging
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Optional, Union

import yaml

from ..handover import EventConfig, SimulationConfig
from ..mobility import MobilityConfig
from ..optimizer import GaConfig, GoldStandard
from ..scenario import NetworkConfig
from ..sensitivity import SobolConfig
from ..surrogate import ModelKind, ModelSpec
from ..sweep import Scenario, SweepSpec

logger = logging.getLogger(__name__)

SECTIONS = (
    "network",
    "mobility",
    "events",
    "simulation",
    "sweep",
    "surrogate",
    "sobol",
    "ga",
    "objective",
    "gold_standard",
)

# Sensitivity always runs over the COP box; only size and seed are configurable
_SOBOL_KEYS = ("n_base", "seed")


@dataclass(frozen=True)
class SurrogateSettings:
    """Training split, model kinds and per-kind hyperparameter overrides."""

    train_fraction: float = 0.8
    split_seed: int = 0
    kinds: tuple[str, ...] = tuple(k.value for k in ModelKind)
    hyperparams: dict[str, dict[str, Any]] = field(default_factory=dict)
    selected_model: str = ModelKind.GBT.value

    def __post_init__(self) -> None:
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError(
                f"train_fraction must be in (0, 1), got {self.train_fraction}"
            )
        if not self.kinds:
            raise ValueError("surrogate.kinds must not be empty")
        for kind in (*self.kinds, self.selected_model, *self.hyperparams):
            # ModelSpec rejects unknown kinds and hyperparameters
            ModelSpec(kind, "mean_rsrp", dict(self.hyperparams.get(kind, {})))
        if self.selected_model not in self.kinds:
            raise ValueError(
                f"selected_model '{self.selected_model}' "
                "is not in surrogate.kinds"
            )


@dataclass(frozen=True)
class ObjectiveSettings:
    alpha: float = 0.5

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"objective.alpha must be in [0, 1], got {self.alpha}")


@dataclass(frozen=True)
class ToolkitConfig:
    """Every setting of the pipeline, with defaults for omitted sections."""

    scenario: Scenario = field(default_factory=Scenario)
    sweep: SweepSpec = field(default_factory=SweepSpec)
    surrogate: SurrogateSettings = field(default_factory=SurrogateSettings)
    sobol: SobolConfig = field(default_factory=SobolConfig.for_cop_box)
    ga: GaConfig = field(default_factory=GaConfig)
    objective: ObjectiveSettings = field(default_factory=ObjectiveSettings)
    gold_standard: GoldStandard = field(default_factory=GoldStandard)

    def with_seed(self, seed: int) -> "ToolkitConfig":
        """Apply one seed to the split, Sobol sampling and the GA."""
        return replace(
            self,
            surrogate=replace(self.surrogate, split_seed=seed),
            sobol=replace(self.sobol, seed=seed),
            ga=replace(self.ga, seed=seed),
        )


def _freeze(value: Any) -> Any:
    """Lists become tuples so configs stay hashable and comparable."""
    if isinstance(value, list):
        return tuple(_freeze(v) for v in value)
    return value


def _section(
    cls: type,
    data: Any,
    name: str,
    allowed: Optional[tuple[str, ...]] = None,
) -> Any:
    """Build cls from a mapping whose keys must be field names of cls."""
    if data is None:
        data = {}
    if not isinstance(data, dict):
        kind = type(data).__name__
        raise ValueError(f"Section '{name}' must be a mapping, got {kind}")
    allowed = allowed or tuple(f.name for f in fields(cls))
    unknown = sorted(set(data) - set(allowed))
    if unknown:
        raise ValueError(f"Unknown keys in section '{name}': {', '.join(unknown)}")
    kwargs = {k: v if isinstance(v, dict) else _freeze(v) for k, v in data.items()}
    try:
        return cls(**kwargs)
    except TypeError as e:
        raise ValueError(f"Invalid section '{name}': {e}") from e


def _network(data: Any) -> NetworkConfig:
    if isinstance(data, dict):
        data = dict(data)
        # YAML reads bare band keys such as 1.7 as floats
        for key in ("bandwidth_mhz", "prbs"):
            if isinstance(data.get(key), dict):
                data[key] = {str(k): v for k, v in data[key].items()}
    return _section(NetworkConfig, data, "network")


def _events(data: Any) -> EventConfig:
    allowed = tuple(f.name for f in fields(EventConfig) if f.name != "cop")
    if isinstance(data, dict) and isinstance(data.get("cell_cio_db"), dict):
        data = dict(data)
        try:
            data["cell_cio_db"] = {
                int(k): float(v) for k, v in data["cell_cio_db"].items()
            }
        except (TypeError, ValueError) as e:
            raise ValueError(f"events.cell_cio_db must map cell ids to dB: {e}") from e
    return _section(EventConfig, data, "events", allowed=allowed)


def config_from_dict(data: Any) -> ToolkitConfig:
    """Validate a parsed configuration document."""
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ValueError("Configuration must be a mapping of sections")
    unknown = sorted(set(data) - set(SECTIONS))
    if unknown:
        raise ValueError(f"Unknown configuration sections: {', '.join(unknown)}")

    scenario = Scenario(
        network=_network(data.get("network")),
        mobility=_section(MobilityConfig, data.get("mobility"), "mobility"),
        events=_events(data.get("events")),
        simulation=_section(SimulationConfig, data.get("simulation"), "simulation"),
    )
    return ToolkitConfig(
        scenario=scenario,
        sweep=_section(SweepSpec, data.get("sweep"), "sweep"),
        surrogate=_section(SurrogateSettings, data.get("surrogate"), "surrogate"),
        sobol=_section(SobolConfig, data.get("sobol"), "sobol", allowed=_SOBOL_KEYS),
        ga=_section(GaConfig, data.get("ga"), "ga"),
        objective=_section(ObjectiveSettings, data.get("objective"), "objective"),
        gold_standard=_section(
            GoldStandard, data.get("gold_standard"), "gold_standard"
        ),
    )


def load_config(path: Optional[Union[str, Path]] = None) -> ToolkitConfig:
    """
    Load a toolkit configuration.

    Args:
        path: .json, .yaml or .yml file; None gives the defaults

    Returns:
        Validated ToolkitConfig

    Raises:
        ValueError: If the file is missing, malformed or holds invalid settings
    """
    if path is None:
        return ToolkitConfig()
    path = Path(path)
    if not path.is_file():
        raise ValueError(f"Config file not found: {path}")

    suffix = path.suffix.lower()
    with open(path, "r", encoding="utf-8") as f:
        try:
            if suffix in (".yaml", ".yml"):
                data = yaml.safe_load(f)
            elif suffix == ".json":
                data = json.load(f)
            else:
                raise ValueError(
                    f"Unsupported config format '{suffix}' (use .json, .yaml or .yml)"
                )
        except (json.JSONDecodeError, yaml.YAMLError) as e:
            raise ValueError(f"Malformed config file {path}: {e}") from e

    logger.debug(f"Loaded configuration from {path}")
    return config_from_dict(data)
