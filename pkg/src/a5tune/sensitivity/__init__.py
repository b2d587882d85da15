# Copyright 2025 Christophe Roeder. All rights reserved.

"""Sobol sensitivity analysis of the KPI surrogates."""

from .sobol import (
    MIN_N_BASE,
    SOBOL_HEADERS,
    SaltelliSample,
    SobolConfig,
    SobolIndices,
    analyze_models,
    saltelli_matrices,
    sobol_indices,
    write_indices_csv,
)

__all__ = [
    "MIN_N_BASE",
    "SOBOL_HEADERS",
    "SaltelliSample",
    "SobolConfig",
    "SobolIndices",
    "analyze_models",
    "saltelli_matrices",
    "sobol_indices",
    "write_indices_csv",
]
