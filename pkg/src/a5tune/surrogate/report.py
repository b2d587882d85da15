# Copyright 2025 Christophe Roeder. All rights reserved.

"""Evaluation report rendering."""

import csv
from pathlib import Path
from typing import TextIO, Union

from .training import EvalEntry, EvalReport

EVAL_REPORT_HEADERS = ["model", "kpi", "rmse", "train_size", "test_size", "split_seed"]

_KPI_UNITS = {"mean_rsrp": "dB", "hosr": "%"}


def write_csv(report: EvalReport, w: TextIO) -> None:
    """Write one row per (model, KPI) in report order."""
    writer = csv.writer(w, lineterminator="\n")
    writer.writerow(EVAL_REPORT_HEADERS)
    for entry in report.entries:
        writer.writerow(
            [
                entry.model,
                entry.kpi,
                f"{entry.rmse:.6f}",
                report.train_size,
                report.test_size,
                report.split_seed,
            ]
        )


def write_text(report: EvalReport, w: TextIO) -> None:
    """Write the report in human-readable Markdown."""
    w.write("# Surrogate Evaluation Report\n\n")
    w.write("| Metric | Value |\n")
    w.write("|--------|------:|\n")
    w.write(f"| Train points | {report.train_size} |\n")
    w.write(f"| Test points | {report.test_size} |\n")
    w.write(f"| Split seed | {report.split_seed} |\n")
    w.write("\n")

    kpis = sorted({e.kpi for e in report.entries})
    for kpi in kpis:
        unit = _KPI_UNITS.get(kpi, "")
        w.write(f"## {kpi}\n\n")
        w.write(f"| Rank | Model | Test RMSE ({unit}) |\n")
        w.write("|-----:|-------|-------------:|\n")
        for rank, entry in enumerate(report.for_kpi(kpi), start=1):
            w.write(f"| {rank} | {entry.model} | {entry.rmse:.4f} |\n")
        w.write("\n")


def read_csv(path: Union[str, Path]) -> EvalReport:
    """
    Read a report written by write_csv.

    Raises:
        ValueError: If the file is missing or its header or rows are malformed
    """
    filepath = Path(path)
    if not filepath.exists():
        raise ValueError(f"Evaluation report not found: {filepath} (run train first)")

    with open(filepath, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames != EVAL_REPORT_HEADERS:
            raise ValueError(f"{filepath} is not an evaluation report")
        report = EvalReport()
        try:
            for row in reader:
                entry = EvalEntry(row["model"], row["kpi"], float(row["rmse"]))
                report.entries.append(entry)
                report.train_size = int(row["train_size"])
                report.test_size = int(row["test_size"])
                report.split_seed = int(row["split_seed"])
        except (TypeError, ValueError) as e:
            raise ValueError(f"Malformed evaluation report {filepath}: {e}") from e
    return report
