# Copyright 2025 Christophe Roeder. All rights reserved.

"""JSON and CSV output of optimization results."""

import csv
import json
from pathlib import Path
from typing import Iterable, TextIO, Union

from ..sweep import atomic_write_text
from .models import OptResult

OPT_RESULT_SCHEMA = "a5tune.opt_result"
OPT_RESULT_SCHEMA_VERSION = 1

COMPARISON_HEADERS = ["method", "objective", "mean_rsrp_dbm", "hosr_pct", "evaluations"]
ALPHA_SWEEP_HEADERS = [
    "alpha",
    "ttt_ms",
    "th1_dbm",
    "th2_dbm",
    "objective",
    "mean_rsrp_dbm",
    "hosr_pct",
]


def opt_result_filename(result: OptResult) -> str:
    return f"opt_result_{result.method}.json"


def write_opt_result(
    result: OptResult, path: Union[str, Path], fingerprint: str = ""
) -> None:
    doc = {
        "schema": OPT_RESULT_SCHEMA,
        "schema_version": OPT_RESULT_SCHEMA_VERSION,
        "fingerprint": fingerprint,
        **result.to_dict(),
    }
    atomic_write_text(path, json.dumps(doc, indent=2, sort_keys=True) + "\n")


def read_opt_result(path: Union[str, Path]) -> OptResult:
    path = Path(path)
    if not path.exists():
        raise ValueError(f"Optimization result not found: {path}")
    try:
        with open(path, encoding="utf-8") as f:
            doc = json.load(f)
    except json.JSONDecodeError as e:
        raise ValueError(f"Malformed optimization result {path}: {e}") from e
    if doc.get("schema") != OPT_RESULT_SCHEMA:
        raise ValueError(f"{path} is not an optimization result")
    return OptResult.from_dict(doc)


def write_comparison(results: Iterable[OptResult], w: TextIO) -> None:
    """One row per method in the order given."""
    writer = csv.writer(w, lineterminator="\n")
    writer.writerow(COMPARISON_HEADERS)
    for r in results:
        writer.writerow(
            [
                r.method,
                f"{r.objective:.6f}",
                f"{r.mean_rsrp_dbm:.6f}",
                f"{r.hosr_pct:.6f}",
                r.evaluations,
            ]
        )


def write_alpha_sweep(results: Iterable[OptResult], w: TextIO) -> None:
    writer = csv.writer(w, lineterminator="\n")
    writer.writerow(ALPHA_SWEEP_HEADERS)
    for r in results:
        writer.writerow(
            [
                f"{r.alpha:.6f}",
                r.best.ttt_ms,
                r.best.th1_dbm,
                r.best.th2_dbm,
                f"{r.objective:.6f}",
                f"{r.mean_rsrp_dbm:.6f}",
                f"{r.hosr_pct:.6f}",
            ]
        )
