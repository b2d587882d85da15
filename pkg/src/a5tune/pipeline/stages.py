# Copyright 2025 Christophe Roeder. All rights reserved.

"""Stage orchestration: sweep, train, sensitivity, optimize and report."""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

from ..config import ToolkitConfig, load_config
from ..handover import CopVector, SimulationResult, simulate, write_event_trace
from ..optimizer import (
    GOLD_STANDARD_METHOD,
    KpiBounds,
    Objective,
    OptResult,
    alpha_grid,
    alpha_sweep,
    brute_force,
    evaluate_point,
    ga_optimize,
    opt_result_filename,
    write_alpha_sweep,
    write_comparison,
    write_opt_result,
)
from ..report import (
    Heatmap,
    check_kpi,
    dataset_heatmap,
    predicted_heatmap,
    write_heatmap_csv,
    write_svg,
)
from ..sensitivity import SobolIndices, analyze_models, write_indices_csv
from ..surrogate import (
    KPI_NAMES,
    EvalReport,
    ModelKind,
    TrainedModel,
    load_model,
    model_filename,
    read_csv,
    save_model,
    train_all,
    write_csv,
    write_text,
)
from ..sweep import (
    Dataset,
    SweepSummary,
    cop_grid,
    manifest_path,
    range_values,
    read_dataset,
    read_manifest,
    run_sweep,
)
from .checks import (
    FLAG,
    PASS,
    CheckResult,
    ga_gap_checks,
    model_ordering_checks,
    sensitivity_checks,
    write_checks_csv,
)
from .manifest import RunManifest

logger = logging.getLogger(__name__)

DATASET_FILE = "dataset.csv"
MODELS_DIR = "models"
EVAL_REPORT_CSV = "eval_report.csv"
EVAL_REPORT_MD = "eval_report.md"
SOBOL_FILE = "sobol_indices.csv"
COMPARISON_FILE = "comparison.csv"
ALPHA_SWEEP_FILE = "alpha_sweep.csv"
REPORT_DIR = "report"
CHECKS_FILE = "checks.csv"
TRACE_DIR = "traces"

OPTIMIZE_METHODS = ("ga", "brute", "both")
REPORT_SOURCES = ("dataset", "models")


@dataclass
class PipelineOptions:
    """Where a pipeline reads its configuration and writes its artifacts."""

    out_dir: str = "./out"
    config_path: Optional[str] = None
    seed: Optional[int] = None  # Overrides the split, Sobol and GA seeds


@dataclass
class OptimizeSummary:
    results: list[OptResult] = field(default_factory=list)
    alpha_results: list[OptResult] = field(default_factory=list)


class Pipeline:
    """Runs one stage at a time against a shared output directory."""

    def __init__(self, options: PipelineOptions, cfg: Optional[ToolkitConfig] = None):
        self.options = options
        self.out_dir = Path(options.out_dir)
        cfg = cfg if cfg is not None else load_config(options.config_path)
        self.cfg = cfg.with_seed(options.seed) if options.seed is not None else cfg

    @property
    def fingerprint(self) -> str:
        return self.cfg.scenario.fingerprint

    @property
    def dataset_path(self) -> Path:
        return self.out_dir / DATASET_FILE

    def _manifest(self, stage: str) -> RunManifest:
        return RunManifest(
            stage=stage,
            fingerprint=self.fingerprint,
            config_path=self.options.config_path,
        )

    def _check_fingerprint(self, what: str, fingerprint: str) -> None:
        if fingerprint != self.fingerprint:
            raise ValueError(
                f"{what} was produced for scenario {fingerprint[:12]}, "
                f"but the configuration describes {self.fingerprint[:12]}"
            )

    def _load_dataset(self) -> Dataset:
        if not self.dataset_path.exists():
            raise ValueError(
                f"Dataset not found: {self.dataset_path} (run sweep first)"
            )
        manifest = read_manifest(self.dataset_path)
        self._check_fingerprint(f"Dataset {self.dataset_path}", manifest["fingerprint"])
        return read_dataset(self.dataset_path)

    def _load_models(self, kind: str) -> dict[str, TrainedModel]:
        kind = ModelKind(kind).value
        models = {}
        for kpi in KPI_NAMES:
            path = self.out_dir / MODELS_DIR / f"{kpi}_{kind}.json"
            model = load_model(path)
            self._check_fingerprint(f"Model {path}", model.fingerprint)
            models[kpi] = model
        return models

    def sweep(self, parallelism: int = 1, resume: bool = False) -> SweepSummary:
        """Simulate the COP grid into dataset.csv."""
        manifest = self._manifest("sweep")
        summary = SweepSummary()
        with manifest.timed("sweep"):
            run_sweep(
                self.cfg.scenario,
                self.cfg.sweep,
                parallelism=parallelism,
                dataset_path=self.dataset_path,
                resume=resume,
                summary=summary,
            )
        manifest.add_output(self.dataset_path)
        manifest.add_output(manifest_path(self.dataset_path))
        manifest.write(self.out_dir)
        return summary

    def train(self) -> EvalReport:
        """Fit every configured model kind for both KPIs and evaluate them."""
        manifest = self._manifest("train")
        dataset = self._load_dataset()
        manifest.inputs.append(str(self.dataset_path))
        settings = self.cfg.surrogate

        try:
            with manifest.timed("train"):
                models, report = train_all(
                    dataset,
                    kinds=settings.kinds,
                    hyperparams=settings.hyperparams,
                    train_fraction=settings.train_fraction,
                    split_seed=settings.split_seed,
                    fingerprint=self.fingerprint,
                )
        except ValueError as e:
            raise RuntimeError(f"Could not fit surrogates: {e}") from e

        models_dir = self.out_dir / MODELS_DIR
        for model in models:
            path = models_dir / model_filename(model)
            save_model(model, path)
            manifest.add_output(path)
        csv_path = self.out_dir / EVAL_REPORT_CSV
        md_path = self.out_dir / EVAL_REPORT_MD
        with open(csv_path, "w", newline="", encoding="utf-8") as f:
            write_csv(report, f)
        with open(md_path, "w", encoding="utf-8") as f:
            write_text(report, f)
        manifest.add_output(csv_path)
        manifest.add_output(md_path)
        manifest.write(self.out_dir)
        return report

    def sensitivity(self, kind: Optional[str] = None) -> dict[str, SobolIndices]:
        """Sobol indices of the selected surrogate for both KPIs."""
        manifest = self._manifest("sensitivity")
        models = self._load_models(kind or self.cfg.surrogate.selected_model)
        manifest.inputs.extend(
            str(self.out_dir / MODELS_DIR / model_filename(m)) for m in models.values()
        )
        with manifest.timed("sensitivity"):
            results = analyze_models(models.values(), self.cfg.sobol)

        path = self.out_dir / SOBOL_FILE
        with open(path, "w", newline="", encoding="utf-8") as f:
            write_indices_csv(results, f)
        manifest.add_output(path)
        manifest.flags.extend(
            str(c) for c in sensitivity_checks(results) if c.status == FLAG
        )
        manifest.write(self.out_dir)
        return results

    def check(
        self, ga_seeds: int = 20, kind: Optional[str] = None
    ) -> list[CheckResult]:
        """
        Re-run the acceptance checks on the trained surrogates into checks.csv.

        Model ordering reads eval_report.csv. The sensitivity trend is
        recomputed on the selected kind and only flagged. The GA is compared
        with brute force over the full COP box on the surrogate objective.
        """
        manifest = self._manifest("check")
        eval_path = self.out_dir / EVAL_REPORT_CSV
        report = read_csv(eval_path)
        dataset = self._load_dataset()
        models = self._load_models(kind or self.cfg.surrogate.selected_model)
        manifest.inputs.extend([str(eval_path), str(self.dataset_path)])

        results = model_ordering_checks(report)
        with manifest.timed("sensitivity"):
            indices = analyze_models(models.values(), self.cfg.sobol)
            results.extend(sensitivity_checks(indices))
        obj = self._objective(
            models, KpiBounds.from_dataset(dataset), self.cfg.objective.alpha
        )
        with manifest.timed("ga_gap"):
            results.extend(ga_gap_checks(obj, self.cfg.ga, n_seeds=ga_seeds))

        path = self.out_dir / CHECKS_FILE
        with open(path, "w", newline="", encoding="utf-8") as f:
            write_checks_csv(results, f)
        manifest.add_output(path)
        manifest.flags.extend(str(r) for r in results if r.status != PASS)
        manifest.write(self.out_dir)
        return results

    def trace(self, cop: CopVector, seed: int) -> tuple[Path, SimulationResult]:
        """Simulate one COP and seed and write its handover event trace."""
        scenario = self.cfg.scenario
        manifest = self._manifest("trace")
        with manifest.timed("simulate"):
            result = simulate(
                scenario.layout,
                scenario.mobility,
                scenario.event_config(cop),
                seed,
                scenario.simulation,
                record_events=True,
            )
        name = f"events_ttt{cop.ttt_ms}_th1{cop.th1_dbm}_th2{cop.th2_dbm}_seed{seed}"
        path = self.out_dir / TRACE_DIR / f"{name}.csv"
        count = write_event_trace(result.events, path)
        logger.info(f"Wrote {count} events for {cop} seed {seed} to {path}")
        manifest.add_output(path)
        manifest.write(self.out_dir)
        return path, result

    def _objective(
        self, models: dict[str, TrainedModel], bounds: KpiBounds, alpha: float
    ) -> Objective:
        return Objective(models["mean_rsrp"], models["hosr"], bounds, alpha)

    def optimize(
        self,
        method: str = "both",
        alpha: Optional[float] = None,
        alpha_sweep_points: int = 0,
        gold_standard: bool = False,
        kind: Optional[str] = None,
    ) -> OptimizeSummary:
        """
        Search the COP grid on the surrogate objective.

        Args:
            method: ga, brute or both
            alpha: Objective weight of mean RSRP; the configured value if None
            alpha_sweep_points: When >= 2, also brute-force this many weights in [0, 1]
            gold_standard: Add the gold-standard midpoint to the comparison
            kind: Surrogate kind; the configured selected model if None

        Returns:
            Results in comparison order plus any alpha-sweep results
        """
        if method not in OPTIMIZE_METHODS:
            raise ValueError(f"Unknown method '{method}' (expected ga, brute or both)")
        alpha = self.cfg.objective.alpha if alpha is None else alpha
        alphas = alpha_grid(alpha_sweep_points) if alpha_sweep_points else []

        manifest = self._manifest("optimize")
        dataset = self._load_dataset()
        models = self._load_models(kind or self.cfg.surrogate.selected_model)
        manifest.inputs.append(str(self.dataset_path))
        bounds = KpiBounds.from_dataset(dataset)
        obj = self._objective(models, bounds, alpha)
        grid = cop_grid(self.cfg.sweep)

        summary = OptimizeSummary()
        if method in ("ga", "both"):
            with manifest.timed("ga"):
                summary.results.append(ga_optimize(obj, self.cfg.ga, self.cfg.sweep))
        if method in ("brute", "both"):
            with manifest.timed("brute"):
                summary.results.append(brute_force(grid, obj))
        if gold_standard:
            midpoint = self.cfg.gold_standard.midpoint()
            summary.results.append(evaluate_point(midpoint, obj, GOLD_STANDARD_METHOD))

        for result in summary.results:
            if result.method == GOLD_STANDARD_METHOD:
                continue
            path = self.out_dir / opt_result_filename(result)
            write_opt_result(result, path, self.fingerprint)
            manifest.add_output(path)
        comparison = self.out_dir / COMPARISON_FILE
        with open(comparison, "w", newline="", encoding="utf-8") as f:
            write_comparison(summary.results, f)
        manifest.add_output(comparison)

        if alpha_sweep_points:
            with manifest.timed("alpha_sweep"):
                summary.alpha_results = alpha_sweep(obj.with_alpha, alphas, grid)
            path = self.out_dir / ALPHA_SWEEP_FILE
            with open(path, "w", newline="", encoding="utf-8") as f:
                write_alpha_sweep(summary.alpha_results, f)
            manifest.add_output(path)

        manifest.write(self.out_dir)
        return summary

    def report(
        self,
        kpi: str,
        ttt: Union[int, str] = "all",
        source: str = "dataset",
        alpha: Optional[float] = None,
        kind: Optional[str] = None,
    ) -> list[Heatmap]:
        """
        Heatmaps of a KPI (or the objective) over th1 x th2, one per TTT.

        Args:
            kpi: mean_rsrp, hosr or objective
            ttt: A TTT value in ms, or "all"
            source: dataset (seed-averaged runs) or models (surrogate predictions)
            alpha: Objective weight; the configured value if None
            kind: Surrogate kind used with source=models
        """
        check_kpi(kpi)
        if source not in REPORT_SOURCES:
            raise ValueError(f"Unknown report source '{source}'")
        alpha = self.cfg.objective.alpha if alpha is None else alpha
        ttt_values = self._report_ttts(ttt)

        manifest = self._manifest("report")
        dataset = self._load_dataset()
        manifest.inputs.append(str(self.dataset_path))
        points = dataset.aggregate()

        heatmaps = []
        with manifest.timed("heatmaps"):
            if source == "dataset":
                for value in ttt_values:
                    heatmaps.append(dataset_heatmap(points, kpi, value, alpha))
            else:
                models = self._load_models(kind or self.cfg.surrogate.selected_model)
                if kpi == "objective":
                    obj = self._objective(models, KpiBounds.from_dataset(points), alpha)
                    predict = obj.evaluate_many
                else:
                    predict = models[kpi].predict_many
                th1 = range_values(self.cfg.sweep.th1_range)
                th2 = range_values(self.cfg.sweep.th2_range)
                for value in ttt_values:
                    heatmaps.append(predicted_heatmap(predict, kpi, value, th1, th2))

        report_dir = self.out_dir / REPORT_DIR
        report_dir.mkdir(parents=True, exist_ok=True)
        for heatmap in heatmaps:
            csv_path = report_dir / f"{heatmap.filename_stem}.csv"
            svg_path = report_dir / f"{heatmap.filename_stem}.svg"
            with open(csv_path, "w", newline="", encoding="utf-8") as f:
                write_heatmap_csv(heatmap, f)
            write_svg(heatmap, svg_path, self.cfg.gold_standard)
            manifest.add_output(csv_path)
            manifest.add_output(svg_path)
        manifest.write(self.out_dir)
        return heatmaps

    def _report_ttts(self, ttt: Union[int, str]) -> Sequence[int]:
        configured = sorted(self.cfg.sweep.ttt_values)
        if ttt == "all":
            return configured
        try:
            value = int(ttt)
        except ValueError as e:
            raise ValueError(
                f"--ttt must be a TTT value in ms or 'all', got {ttt}"
            ) from e
        if value not in configured:
            raise ValueError(f"TTT {value} ms is not part of the sweep {configured}")
        return [value]
