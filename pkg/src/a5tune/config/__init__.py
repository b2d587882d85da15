# Copyright 2025 Christophe Roeder. All rights reserved.

"""Toolkit configuration files."""

from .loader import (
    SECTIONS,
    ObjectiveSettings,
    SurrogateSettings,
    ToolkitConfig,
    config_from_dict,
    load_config,
)

__all__ = [
    "SECTIONS",
    "ObjectiveSettings",
    "SurrogateSettings",
    "ToolkitConfig",
    "config_from_dict",
    "load_config",
]
