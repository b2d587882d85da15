# Copyright 2025 Christophe Roeder. All rights reserved.

"""Surrogate-driven COP optimization."""

from .io import (
    ALPHA_SWEEP_HEADERS,
    COMPARISON_HEADERS,
    opt_result_filename,
    read_opt_result,
    write_alpha_sweep,
    write_comparison,
    write_opt_result,
)
from .models import (
    GOLD_STANDARD_METHOD,
    METHODS,
    GaConfig,
    GoldStandard,
    KpiBounds,
    OptResult,
)
from .objective import KpiPredictor, Objective, combine, normalize, objective
from .search import alpha_grid, alpha_sweep, brute_force, evaluate_point, ga_optimize

__all__ = [
    "GaConfig",
    "GoldStandard",
    "KpiBounds",
    "OptResult",
    "METHODS",
    "GOLD_STANDARD_METHOD",
    "KpiPredictor",
    "Objective",
    "objective",
    "normalize",
    "combine",
    "brute_force",
    "ga_optimize",
    "evaluate_point",
    "alpha_grid",
    "alpha_sweep",
    "opt_result_filename",
    "write_opt_result",
    "read_opt_result",
    "write_comparison",
    "write_alpha_sweep",
    "COMPARISON_HEADERS",
    "ALPHA_SWEEP_HEADERS",
]
