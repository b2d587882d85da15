# Copyright 2025 Christophe Roeder. All rights reserved.

"""COP grid sweeps producing labeled KPI datasets."""

from .dataset_io import (
    DatasetAppender,
    atomic_write_text,
    manifest_path,
    read_dataset,
    read_manifest,
    write_dataset,
    write_manifest,
)
from .fingerprint import fingerprint_payload, hash_payload, scenario_fingerprint
from .grid import cop_grid, grid_size
from .models import (
    DATASET_HEADERS,
    CopMeans,
    Dataset,
    DatasetRow,
    Scenario,
    SweepSpec,
    range_values,
)
from .runner import RunFailure, SweepSummary, run_sweep, simulate_batch

__all__ = [
    "SweepSpec",
    "Scenario",
    "Dataset",
    "DatasetRow",
    "CopMeans",
    "DATASET_HEADERS",
    "range_values",
    "cop_grid",
    "grid_size",
    "scenario_fingerprint",
    "fingerprint_payload",
    "hash_payload",
    "read_dataset",
    "write_dataset",
    "read_manifest",
    "write_manifest",
    "manifest_path",
    "atomic_write_text",
    "DatasetAppender",
    "run_sweep",
    "simulate_batch",
    "RunFailure",
    "SweepSummary",
]
