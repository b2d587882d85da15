# Copyright 2025 Christophe Roeder. All rights reserved.

"""CSV persistence for sweep datasets with a JSON sidecar manifest."""

import csv
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Optional, TextIO, Union

from .models import DATASET_HEADERS, DATASET_SCHEMA_VERSION, Dataset, DatasetRow

logger = logging.getLogger(__name__)

DATASET_SCHEMA = "a5tune.dataset"


def manifest_path(dataset_path: Union[str, Path]) -> Path:
    """Sidecar location: dataset.csv -> dataset.manifest.json."""
    path = Path(dataset_path)
    return path.with_name(f"{path.stem}.manifest.json")


def atomic_write_text(path: Union[str, Path], text: str) -> None:
    """Write a file so readers never observe a partial document."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(
        prefix=path.name + ".", suffix=".tmp", dir=str(path.parent)
    )
    try:
        with os.fdopen(fd, "w", newline="", encoding="utf-8") as f:
            f.write(text)
        os.replace(tmp_path, path)
    except Exception:
        try:
            os.remove(tmp_path)
        except OSError:
            pass
        raise


def write_manifest(
    dataset_path: Union[str, Path],
    fingerprint: str,
    scenario: Optional[dict[str, Any]] = None,
) -> Path:
    """Write the sidecar manifest recording the scenario fingerprint."""
    doc: dict[str, Any] = {
        "schema": DATASET_SCHEMA,
        "schema_version": DATASET_SCHEMA_VERSION,
        "fingerprint": fingerprint,
        "headers": DATASET_HEADERS,
    }
    if scenario is not None:
        doc["scenario"] = scenario
    path = manifest_path(dataset_path)
    atomic_write_text(path, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return path


def read_manifest(dataset_path: Union[str, Path]) -> dict[str, Any]:
    path = manifest_path(dataset_path)
    if not path.exists():
        raise ValueError(f"Dataset manifest not found: {path}")
    try:
        with open(path, encoding="utf-8") as f:
            doc = json.load(f)
    except json.JSONDecodeError as e:
        raise ValueError(f"Malformed dataset manifest {path}: {e}") from e
    if doc.get("schema") != DATASET_SCHEMA:
        raise ValueError(f"{path} is not a dataset manifest")
    if not isinstance(doc.get("fingerprint"), str):
        raise ValueError(f"{path} does not record a scenario fingerprint")
    if doc.get("schema_version") != DATASET_SCHEMA_VERSION:
        raise ValueError(
            f"Unsupported dataset schema version {doc.get('schema_version')} in {path}"
        )
    return doc


def write_dataset(dataset: Dataset, path: Union[str, Path]) -> None:
    """
    Write a dataset as CSV, rows sorted by (ttt, th1, th2, seed).

    The CSV is replaced atomically; the manifest is rewritten alongside it.
    """
    lines = [",".join(DATASET_HEADERS)]
    for row in dataset.sorted_rows():
        lines.append(",".join(row.to_csv_row()))
    atomic_write_text(path, "\n".join(lines) + "\n")
    doc = read_manifest(path) if manifest_path(path).exists() else {}
    if doc.get("fingerprint", dataset.fingerprint) != dataset.fingerprint:
        raise ValueError(f"Manifest next to {path} belongs to another scenario")
    write_manifest(path, dataset.fingerprint, doc.get("scenario"))


def read_dataset(path: Union[str, Path]) -> Dataset:
    """
    Load a dataset CSV and its manifest.

    A truncated final line (left by an interrupted sweep) is skipped with a
    warning; malformed rows anywhere else raise ValueError.
    """
    path = Path(path)
    if not path.exists():
        raise ValueError(f"Dataset not found: {path}")
    manifest = read_manifest(path)

    with open(path, newline="", encoding="utf-8") as f:
        records = list(csv.reader(f))
    if not records or records[0] != DATASET_HEADERS:
        raise ValueError(
            f"{path} does not start with the header {','.join(DATASET_HEADERS)}"
        )

    rows: list[DatasetRow] = []
    body = records[1:]
    for i, record in enumerate(body):
        if len(record) != len(DATASET_HEADERS):
            if i == len(body) - 1:
                logger.warning(f"Skipping truncated last row in {path}")
                break
            raise ValueError(f"Row {i + 2} of {path} has {len(record)} fields")
        rows.append(DatasetRow.from_csv_row(dict(zip(DATASET_HEADERS, record))))

    return Dataset(rows=rows, fingerprint=manifest["fingerprint"])


class DatasetAppender:
    """Appends completed rows to a dataset CSV, flushing after each row."""

    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)
        self._file: Optional[TextIO] = None
        self._writer: Any = None

    def __enter__(self) -> "DatasetAppender":
        self.path.parent.mkdir(parents=True, exist_ok=True)
        needs_header = not self.path.exists() or self.path.stat().st_size == 0
        self._file = open(self.path, "a", newline="", encoding="utf-8")
        self._writer = csv.writer(self._file, lineterminator="\n")
        if needs_header:
            self._writer.writerow(DATASET_HEADERS)
            self._file.flush()
        return self

    def __exit__(self, *exc: object) -> None:
        if self._file is not None:
            self._file.close()
            self._file = None

    def append(self, row: DatasetRow) -> None:
        if self._file is None:
            raise RuntimeError("DatasetAppender used outside of a with block")
        self._writer.writerow(row.to_csv_row())
        self._file.flush()
