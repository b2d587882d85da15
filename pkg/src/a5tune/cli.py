# Copyright 2025 Christophe Roeder. All rights reserved.

"""Command-line interface for a5tune."""

import logging
import sys
from typing import Callable, Optional, TypeVar

import click

from .handover import CopVector
from .pipeline import OPTIMIZE_METHODS, REPORT_SOURCES, Pipeline, PipelineOptions
from .pipeline.checks import FLAG, GA_SEEDS, sensitivity_checks
from .report import REPORT_KPIS

PARALLELISM_ENVVAR = "A5TUNE_PARALLELISM"

EXIT_RUNTIME = 1
EXIT_USAGE = 2

T = TypeVar("T")


def setup_logging(verbose: bool) -> None:
    """Configure logging based on verbosity."""
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )


def run_stage(stage: str, fn: Callable[[], T]) -> T:
    """
    Run one stage, mapping failures to exit codes.

    ValueError (configuration, arguments, fingerprint mismatch) exits 2;
    anything else exits 1.
    """
    try:
        return fn()
    except ValueError as e:
        click.echo(f"{stage} failed: {e}", err=True)
        sys.exit(EXIT_USAGE)
    except KeyboardInterrupt:
        click.echo(f"{stage} interrupted", err=True)
        sys.exit(EXIT_RUNTIME)
    except Exception as e:
        click.echo(f"{stage} failed: {e}", err=True)
        sys.exit(EXIT_RUNTIME)


def _pipeline(ctx: click.Context) -> Pipeline:
    options: PipelineOptions = ctx.obj
    return run_stage("Configuration", lambda: Pipeline(options))


@click.group()
@click.option(
    "--config",
    "config_path",
    type=click.Path(),
    help="Toolkit configuration file (.json, .yaml or .yml)",
)
@click.option(
    "--out",
    "out_dir",
    default="./out",
    show_default=True,
    type=click.Path(file_okay=False),
    help="Directory for all artifacts",
)
@click.option(
    "--seed",
    type=int,
    default=None,
    help="Seed for the train/test split, Sobol sampling and the GA",
)
@click.option("-v", "--verbose", is_flag=True, help="Enable verbose logging")
@click.pass_context
def main(
    ctx: click.Context,
    config_path: Optional[str],
    out_dir: str,
    seed: Optional[int],
    verbose: bool,
) -> None:
    """Tune A5 handover parameters (TTT, threshold1, threshold2).

    Examples:

    \b
    # Simulate the COP grid, resuming an interrupted run
    a5tune --config scenario.yaml --out out/ sweep --parallelism 8 --resume

    \b
    # Train surrogates, then rank the COP inputs
    a5tune --config scenario.yaml --out out/ train
    a5tune --config scenario.yaml --out out/ sensitivity

    \b
    # Compare GA against brute force and the gold standard
    a5tune --config scenario.yaml --out out/ optimize --method both --gold-standard

    \b
    # HOSR heatmaps for every TTT
    a5tune --config scenario.yaml --out out/ report --kpi hosr --ttt all

    \b
    # Re-check the trained surrogates, then trace one COP
    a5tune --config scenario.yaml --out out/ check --ga-seeds 20
    a5tune --config scenario.yaml --out out/ trace --ttt 256 --th1 -105 --th2 -103
    """
    setup_logging(verbose)
    ctx.obj = PipelineOptions(out_dir=out_dir, config_path=config_path, seed=seed)


@main.command()
@click.option(
    "--parallelism",
    type=click.IntRange(min=1),
    default=1,
    show_default=True,
    envvar=PARALLELISM_ENVVAR,
    show_envvar=True,
    help="Number of worker processes",
)
@click.option("--resume", is_flag=True, help="Keep rows of an existing dataset")
@click.pass_context
def sweep(ctx: click.Context, parallelism: int, resume: bool) -> None:
    """Simulate every COP and seed into dataset.csv."""
    pipeline = _pipeline(ctx)
    summary = run_stage("Sweep", lambda: pipeline.sweep(parallelism, resume))
    click.echo(
        f"Sweep complete: {summary.total_rows} rows "
        f"({summary.reused_rows} reused, {summary.executed_runs} simulated). "
        f"Output written to: {pipeline.dataset_path}"
    )


@main.command()
@click.pass_context
def train(ctx: click.Context) -> None:
    """Fit surrogates for mean RSRP and HOSR and report test RMSE."""
    pipeline = _pipeline(ctx)
    report = run_stage("Train", pipeline.train)
    click.echo(
        f"Training complete: {len(report.entries)} models on "
        f"{report.train_size}/{report.test_size} train/test points"
    )
    for kpi in sorted({e.kpi for e in report.entries}):
        best = report.best(kpi)
        if best is not None:
            click.echo(f"  {kpi}: best {best.model} (RMSE {best.rmse:.4f})")


@main.command()
@click.option("--model", "kind", default=None, help="Surrogate kind to analyze")
@click.pass_context
def sensitivity(ctx: click.Context, kind: Optional[str]) -> None:
    """Sobol first- and total-order indices of the surrogates."""
    pipeline = _pipeline(ctx)
    results = run_stage("Sensitivity", lambda: pipeline.sensitivity(kind))
    for kpi, indices in results.items():
        flag = " (zero variance)" if indices.zero_variance else ""
        parts = ", ".join(
            f"{name} {s:.3f}" for name, s in zip(indices.names, indices.first_order)
        )
        click.echo(f"  {kpi}: {parts}{flag}")
    for c in sensitivity_checks(results):
        if c.status == FLAG:
            click.echo(f"  flagged: {c}")


@main.command()
@click.option(
    "--method",
    type=click.Choice(OPTIMIZE_METHODS),
    default="both",
    show_default=True,
)
@click.option(
    "--alpha",
    type=click.FloatRange(0.0, 1.0),
    default=None,
    help="Weight of mean RSRP in the objective (default from config, 0.5)",
)
@click.option(
    "--alpha-sweep",
    "alpha_sweep_points",
    type=click.IntRange(min=0),
    default=0,
    help="Also brute-force N evenly spaced weights in [0, 1]",
)
@click.option(
    "--gold-standard",
    is_flag=True,
    help="Add the gold-standard midpoint to comparison.csv",
)
@click.option("--model", "kind", default=None, help="Surrogate kind to optimize")
@click.pass_context
def optimize(
    ctx: click.Context,
    method: str,
    alpha: Optional[float],
    alpha_sweep_points: int,
    gold_standard: bool,
    kind: Optional[str],
) -> None:
    """Maximize the joint RSRP/HOSR objective on the surrogates."""
    pipeline = _pipeline(ctx)
    summary = run_stage(
        "Optimize",
        lambda: pipeline.optimize(
            method, alpha, alpha_sweep_points, gold_standard, kind
        ),
    )
    for r in summary.results:
        click.echo(
            f"  {r.method}: {r.best} objective {r.objective:.4f} "
            f"(RSRP {r.mean_rsrp_dbm:.2f} dBm, HOSR {r.hosr_pct:.2f}%, "
            f"{r.evaluations} evaluations)"
        )


@main.command()
@click.option("--kpi", required=True, help=f"One of {', '.join(REPORT_KPIS)}")
@click.option(
    "--ttt", default="all", show_default=True, help="TTT in ms, or 'all'"
)
@click.option(
    "--source",
    type=click.Choice(REPORT_SOURCES),
    default="dataset",
    show_default=True,
)
@click.option(
    "--alpha",
    type=click.FloatRange(0.0, 1.0),
    default=None,
    help="Objective weight for --kpi objective",
)
@click.option(
    "--model", "kind", default=None, help="Surrogate kind for --source models"
)
@click.pass_context
def report(
    ctx: click.Context,
    kpi: str,
    ttt: str,
    source: str,
    alpha: Optional[float],
    kind: Optional[str],
) -> None:
    """Write KPI heatmaps over threshold1 x threshold2 as CSV and SVG."""
    pipeline = _pipeline(ctx)
    heatmaps = run_stage(
        "Report", lambda: pipeline.report(kpi, ttt, source, alpha, kind)
    )
    click.echo(f"Report complete: {len(heatmaps)} heatmap(s) in {pipeline.out_dir}")


@main.command()
@click.option(
    "--ga-seeds",
    type=click.IntRange(min=1),
    default=GA_SEEDS,
    show_default=True,
    help="Number of GA seeds compared against brute force",
)
@click.option("--model", "kind", default=None, help="Surrogate kind to check")
@click.pass_context
def check(ctx: click.Context, ga_seeds: int, kind: Optional[str]) -> None:
    """Check model ordering, sensitivity trends and the GA gap into checks.csv."""
    pipeline = _pipeline(ctx)
    results = run_stage("Check", lambda: pipeline.check(ga_seeds, kind))
    for result in results:
        click.echo(f"  {result}")
    failed = [r for r in results if r.failed]
    if failed:
        click.echo(f"Check failed: {len(failed)} of {len(results)} checks", err=True)
        sys.exit(EXIT_RUNTIME)


@main.command()
@click.option("--ttt", "ttt_ms", type=int, required=True, help="Time-to-trigger in ms")
@click.option("--th1", "th1_dbm", type=int, required=True, help="threshold1 in dBm")
@click.option("--th2", "th2_dbm", type=int, required=True, help="threshold2 in dBm")
@click.option(
    "--run-seed",
    type=click.IntRange(min=0),
    default=0,
    show_default=True,
    help="Simulation seed of the traced run",
)
@click.pass_context
def trace(
    ctx: click.Context, ttt_ms: int, th1_dbm: int, th2_dbm: int, run_seed: int
) -> None:
    """Simulate one COP and write its handover event trace."""
    pipeline = _pipeline(ctx)
    path, result = run_stage(
        "Trace",
        lambda: pipeline.trace(CopVector(ttt_ms, th1_dbm, th2_dbm), run_seed),
    )
    click.echo(
        f"Trace complete: {len(result.events)} events, "
        f"HOSR {result.kpi.hosr_pct:.2f}%, "
        f"RSRP {result.kpi.mean_rsrp_dbm:.2f} dBm. Output written to: {path}"
    )


if __name__ == "__main__":
    main()
