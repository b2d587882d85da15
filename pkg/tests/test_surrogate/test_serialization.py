# Copyright 2025 Christophe Roeder. All rights reserved.

"""Tests for model files and evaluation report output."""

import io
import json

import numpy as np
import pytest

from a5tune.surrogate import (
    EVAL_REPORT_HEADERS,
    EvalEntry,
    EvalReport,
    ModelKind,
    ModelSpec,
    fit,
    load_model,
    model_filename,
    read_csv,
    save_model,
    write_csv,
    write_text,
)
from a5tune.sweep import SweepSpec

COARSE = SweepSpec(th1_range=(-120, -90, 10), th2_range=(-120, -90, 10))

SMALL_PARAMS = {
    "random_forest": {"n_trees": 5},
    "gbt": {"n_rounds": 10},
}


def smooth(X):
    return 95.0 - np.abs(X[:, 1] + 105.0) / 5.0 - X[:, 0] / 512.0


class TestModelFiles:
    """Tests for save_model and load_model."""

    @pytest.mark.parametrize("kind", [k.value for k in ModelKind])
    def test_loaded_model_predicts_identically(self, make_points, tmp_path, kind):
        """Test that a reloaded model reproduces its predictions."""
        points = make_points(smooth, smooth, COARSE)
        model = fit(
            ModelSpec(kind, "hosr", dict(SMALL_PARAMS.get(kind, {}))),
            points,
            fingerprint="abc",
        )
        path = tmp_path / "models" / model_filename(model)

        save_model(model, path)
        loaded = load_model(path)

        assert path.name == f"hosr_{kind}.json"
        assert loaded.fingerprint == "abc"
        assert loaded.spec == model.spec
        assert np.array_equal(
            loaded.predict_many(points.features), model.predict_many(points.features)
        )

    def test_missing_file(self, tmp_path):
        """Test that a missing model file is a ValueError."""
        with pytest.raises(ValueError, match="not found"):
            load_model(tmp_path / "none.json")

    def test_malformed_json(self, tmp_path):
        """Test that unparsable files are rejected."""
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(ValueError, match="Malformed"):
            load_model(path)

    def test_wrong_schema(self, tmp_path):
        """Test that foreign documents are rejected."""
        path = tmp_path / "other.json"
        path.write_text(json.dumps({"schema": "something.else"}))
        with pytest.raises(ValueError):
            load_model(path)

    def test_missing_fields(self, tmp_path):
        """Test that truncated model documents are rejected."""
        path = tmp_path / "partial.json"
        path.write_text(json.dumps({"schema": "a5tune.model", "schema_version": 1}))
        with pytest.raises(ValueError, match="Malformed"):
            load_model(path)


class TestEvalReportOutput:
    """Tests for the evaluation report writers."""

    def make_report(self) -> EvalReport:
        return EvalReport(
            entries=[
                EvalEntry("gbt", "mean_rsrp", 0.25),
                EvalEntry("linear", "mean_rsrp", 1.5),
                EvalEntry("gbt", "hosr", 0.75),
            ],
            train_size=3844,
            test_size=961,
            split_seed=0,
        )

    def test_write_csv(self):
        """Test header and row formatting."""
        buf = io.StringIO()
        write_csv(self.make_report(), buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == ",".join(EVAL_REPORT_HEADERS)
        assert lines[1] == "gbt,mean_rsrp,0.250000,3844,961,0"
        assert len(lines) == 4

    def test_write_text(self):
        """Test Markdown sections and ranking."""
        buf = io.StringIO()
        write_text(self.make_report(), buf)
        text = buf.getvalue()
        assert text.startswith("# Surrogate Evaluation Report")
        assert "| Train points | 3844 |" in text
        assert "## mean_rsrp" in text
        assert "| 1 | gbt | 0.2500 |" in text
        assert "| 2 | linear | 1.5000 |" in text

    def test_read_csv(self, tmp_path):
        """Test reading back the entries and split sizes of a written report."""
        path = tmp_path / "eval_report.csv"
        with open(path, "w", newline="") as f:
            write_csv(self.make_report(), f)

        report = read_csv(path)

        assert report.rmse_of("linear", "mean_rsrp") == 1.5
        sizes = (report.train_size, report.test_size, report.split_seed)
        assert sizes == (3844, 961, 0)
        assert len(report.entries) == 3

    def test_read_csv_errors(self, tmp_path):
        """Test a missing file, a foreign header and a malformed row."""
        with pytest.raises(ValueError, match="run train first"):
            read_csv(tmp_path / "none.csv")

        foreign = tmp_path / "foreign.csv"
        foreign.write_text("a,b\n1,2\n")
        with pytest.raises(ValueError, match="not an evaluation report"):
            read_csv(foreign)

        bad = tmp_path / "bad.csv"
        bad.write_text(",".join(EVAL_REPORT_HEADERS) + "\ngbt,hosr,fast,1,1,0\n")
        with pytest.raises(ValueError, match="Malformed"):
            read_csv(bad)

    def test_best_and_lookup(self):
        """Test best() and rmse_of()."""
        report = self.make_report()
        assert report.best("mean_rsrp").model == "gbt"
        assert report.best("sinr") is None
        assert report.rmse_of("gbt", "hosr") == 0.75
        with pytest.raises(KeyError):
            report.rmse_of("linear", "hosr")
