# Copyright 2025 Christophe Roeder. All rights reserved.

"""Desk-scale acceptance run: sweep, train and check on the reference layout."""

from pathlib import Path

import pytest

from a5tune.pipeline import CHECKS_FILE, Pipeline, PipelineOptions
from a5tune.pipeline.checks import FLAG, GA_MIN_WITHIN, GA_SEEDS, PASS

DESK_CONFIG = Path(__file__).resolve().parents[2] / "configs" / "desk.yaml"

pytestmark = pytest.mark.slow


@pytest.fixture(scope="module")
def checked(tmp_path_factory):
    """Run sweep, train and check once; return the pipeline and its results."""
    out_dir = tmp_path_factory.mktemp("acceptance")
    pipeline = Pipeline(
        PipelineOptions(out_dir=str(out_dir), config_path=str(DESK_CONFIG))
    )
    pipeline.sweep(parallelism=4)
    pipeline.train()
    return pipeline, pipeline.check(ga_seeds=GA_SEEDS)


class TestAcceptance:
    """Tests for the trends a calibrated scenario must show."""

    def test_tree_ensembles_beat_linear(self, checked):
        """Test that gbt and random_forest have lower test RMSE than linear."""
        _, results = checked
        ordering = [r for r in results if r.check == "rmse_below_linear"]
        assert len(ordering) == 4
        assert all(r.status == PASS for r in ordering), [str(r) for r in ordering]

    def test_sensitivity_trend_is_reported(self, checked):
        """Test that the threshold2 and TTT trends are recorded, pass or flag."""
        pipeline, results = checked
        trend = [r for r in results if r.check in ("th2_dbm_dominant", "ttt_ms_minor")]
        assert len(trend) == 3
        assert all(r.status in (PASS, FLAG) for r in trend)
        assert (pipeline.out_dir / CHECKS_FILE).exists()

    def test_ga_close_to_brute_force(self, checked):
        """Test the GA gap over 20 seeds and the evaluation ratio."""
        _, results = checked
        within = next(r for r in results if r.check == "ga_gap_within")
        ratio = next(r for r in results if r.check == "evaluation_ratio")
        assert within.value >= GA_MIN_WITHIN, str(within)
        assert ratio.status == PASS, str(ratio)
