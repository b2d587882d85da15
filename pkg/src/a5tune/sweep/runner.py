# Copyright 2025 Christophe Roeder. All rights reserved.

"""Parallel, resumable execution of a COP sweep."""

import logging
import math
from concurrent.futures import ProcessPoolExecutor, as_completed
from contextlib import AbstractContextManager, nullcontext
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from ..handover import CopVector, RadioTrace, replay_events, trace_radio
from ..mobility import user_count
from .dataset_io import (
    DatasetAppender,
    read_dataset,
    write_dataset,
    write_manifest,
)
from .fingerprint import fingerprint_payload
from .grid import cop_grid
from .models import Dataset, DatasetRow, Scenario, SweepSpec

logger = logging.getLogger(__name__)

# Per-process cache of radio traces keyed by (fingerprint, seed)
_TRACE_CACHE: dict[tuple[str, int], RadioTrace] = {}
_TRACE_CACHE_SIZE = 2


@dataclass(frozen=True)
class RunFailure:
    cop: CopVector
    seed: int
    message: str


@dataclass
class SweepSummary:
    """Bookkeeping for one run_sweep call."""

    total_rows: int = 0
    reused_rows: int = 0
    executed_runs: int = 0
    failed_runs: int = 0


def _trace_for(scenario: Scenario, seed: int) -> RadioTrace:
    key = (scenario.fingerprint, seed)
    trace = _TRACE_CACHE.get(key)
    if trace is None:
        while len(_TRACE_CACHE) >= _TRACE_CACHE_SIZE:
            _TRACE_CACHE.pop(next(iter(_TRACE_CACHE)))
        trace = trace_radio(
            scenario.layout, scenario.mobility, seed, scenario.simulation
        )
        _TRACE_CACHE[key] = trace
    return trace


def simulate_batch(
    scenario: Scenario, seed: int, cops: list[CopVector]
) -> list[Union[DatasetRow, RunFailure]]:
    """Simulate several COPs that share one seed (and therefore one trace)."""
    try:
        trace = _trace_for(scenario, seed)
    except Exception as e:
        return [RunFailure(cop, seed, f"radio trace failed: {e}") for cop in cops]

    results: list[Union[DatasetRow, RunFailure]] = []
    for cop in cops:
        try:
            result = replay_events(trace, scenario.event_config(cop))
            row = DatasetRow(
                cop=cop,
                seed=seed,
                kpi=result.kpi,
                hos=result.counters.hos,
                hof=result.counters.hof,
            )
            results.append(row.quantized())
        except Exception as e:
            results.append(RunFailure(cop, seed, str(e)))
    return results


def _check_config(scenario: Scenario, spec: SweepSpec) -> None:
    """Reject configurations that would fail every run."""
    step_ms = scenario.simulation.step_ms
    for ttt in spec.ttt_values:
        if ttt % step_ms != 0:
            raise ValueError(f"TTT {ttt} ms is not divisible by step_ms={step_ms}")
    if user_count(scenario.mobility, scenario.network.area_side_m) == 0:
        raise ValueError("Scenario has zero users; increase user density or area")


def _batches(
    pending: list[tuple[CopVector, int]], parallelism: int
) -> list[tuple[int, list[CopVector]]]:
    """Group pending runs by seed and split into evenly sized chunks."""
    by_seed: dict[int, list[CopVector]] = {}
    for cop, seed in pending:
        by_seed.setdefault(seed, []).append(cop)
    n_chunks = max(1, parallelism * 4)
    chunk = max(1, math.ceil(len(pending) / n_chunks))
    batches = []
    for seed in sorted(by_seed):
        cops = by_seed[seed]
        for start in range(0, len(cops), chunk):
            batches.append((seed, cops[start : start + chunk]))
    return batches


def _load_existing(
    dataset_path: Path, scenario: Scenario, wanted: set[tuple[int, int, int, int]]
) -> list[DatasetRow]:
    existing = read_dataset(dataset_path)
    if existing.fingerprint != scenario.fingerprint:
        raise ValueError(
            f"Cannot resume {dataset_path}: it was produced by a different scenario "
            f"(fingerprint {existing.fingerprint[:12]} != {scenario.fingerprint[:12]})"
        )
    rows = [row for row in existing.rows if row.key in wanted]
    if len(rows) != len(existing.rows):
        logger.warning(
            f"Dropping {len(existing.rows) - len(rows)} rows outside the current grid"
        )
    return rows


def run_sweep(
    scenario: Scenario,
    spec: SweepSpec,
    parallelism: int = 1,
    dataset_path: Optional[Union[str, Path]] = None,
    resume: bool = False,
    summary: Optional[SweepSummary] = None,
) -> Dataset:
    """
    Simulate every (COP, seed) pair of the sweep and assemble the dataset.

    Rows are independent of scheduling, so the result is identical for any
    parallelism. With a dataset_path, completed rows are appended as they
    arrive and the final CSV is rewritten sorted; resume=True skips rows
    already present in a dataset with a matching fingerprint.

    Raises:
        ValueError: Invalid configuration or resume against another scenario
        RuntimeError: One or more runs failed (completed rows are kept)
    """
    if parallelism < 1:
        raise ValueError(f"parallelism must be >= 1, got {parallelism}")
    _check_config(scenario, spec)
    stats = summary if summary is not None else SweepSummary()

    grid = cop_grid(spec)
    wanted = [(cop, seed) for cop in grid for seed in spec.seeds]
    wanted_keys = {(*cop.as_tuple(), seed) for cop, seed in wanted}
    stats.total_rows = len(wanted)

    path = Path(dataset_path) if dataset_path is not None else None
    rows: list[DatasetRow] = []
    if path is not None and resume and path.exists():
        rows = _load_existing(path, scenario, wanted_keys)
        write_dataset(Dataset(rows=rows, fingerprint=scenario.fingerprint), path)
    elif path is not None:
        if path.exists():
            path.unlink()
        write_manifest(path, scenario.fingerprint, fingerprint_payload(scenario))
    stats.reused_rows = len(rows)

    done = {row.key for row in rows}
    pending = [
        (cop, seed) for cop, seed in wanted if (*cop.as_tuple(), seed) not in done
    ]
    logger.info(
        f"Sweep: {len(grid)} COPs x {len(spec.seeds)} seeds = {len(wanted)} rows, "
        f"{len(done)} already done, {len(pending)} to run (parallelism {parallelism})"
    )

    failures: list[RunFailure] = []
    batches = _batches(pending, parallelism)

    def collect(
        results: list[Union[DatasetRow, RunFailure]],
        out: Optional[DatasetAppender],
    ) -> None:
        for item in results:
            if isinstance(item, RunFailure):
                logger.error(f"Run {item.cop} seed {item.seed} failed: {item.message}")
                failures.append(item)
                continue
            rows.append(item)
            if out is not None:
                out.append(item)
        stats.executed_runs += len(results)
        completed = len(rows) - stats.reused_rows
        logger.info(f"Completed {completed}/{len(pending)} runs")

    appender: AbstractContextManager[Optional[DatasetAppender]] = (
        DatasetAppender(path) if path is not None and pending else nullcontext()
    )
    with appender as out:
        if parallelism == 1:
            for seed, cops in batches:
                collect(simulate_batch(scenario, seed, cops), out)
        elif batches:
            with ProcessPoolExecutor(max_workers=parallelism) as ex:
                futures = [
                    ex.submit(simulate_batch, scenario, seed, cops)
                    for seed, cops in batches
                ]
                for future in as_completed(futures):
                    collect(future.result(), out)

    stats.failed_runs = len(failures)
    dataset = Dataset(rows=rows, fingerprint=scenario.fingerprint)
    if path is not None:
        write_dataset(dataset, path)

    if failures:
        first = ", ".join(f"{f.cop} seed {f.seed}" for f in failures[:5])
        raise RuntimeError(
            f"{len(failures)} of {len(pending)} runs failed (first: {first}); "
            f"{len(rows)} completed rows kept"
        )
    logger.info(f"Sweep finished with {len(dataset)} rows")
    return dataset
