# Copyright 2025 Christophe Roeder. All rights reserved.

"""Pipeline stages shared by the command-line interface."""

from .checks import CHECK_HEADERS, CheckResult, write_checks_csv
from .manifest import RunManifest
from .stages import (
    ALPHA_SWEEP_FILE,
    CHECKS_FILE,
    COMPARISON_FILE,
    DATASET_FILE,
    EVAL_REPORT_CSV,
    EVAL_REPORT_MD,
    MODELS_DIR,
    OPTIMIZE_METHODS,
    REPORT_DIR,
    REPORT_SOURCES,
    SOBOL_FILE,
    TRACE_DIR,
    OptimizeSummary,
    Pipeline,
    PipelineOptions,
)

__all__ = [
    "Pipeline",
    "PipelineOptions",
    "OptimizeSummary",
    "RunManifest",
    "CheckResult",
    "CHECK_HEADERS",
    "write_checks_csv",
    "DATASET_FILE",
    "MODELS_DIR",
    "EVAL_REPORT_CSV",
    "EVAL_REPORT_MD",
    "SOBOL_FILE",
    "COMPARISON_FILE",
    "ALPHA_SWEEP_FILE",
    "REPORT_DIR",
    "CHECKS_FILE",
    "TRACE_DIR",
    "OPTIMIZE_METHODS",
    "REPORT_SOURCES",
]
