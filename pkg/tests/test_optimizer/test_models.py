# Copyright 2025 Christophe Roeder. All rights reserved.

"""Tests for the objective, optimizer settings and result files."""

import io
import json

import numpy as np
import pytest

from a5tune.handover import CopVector
from a5tune.optimizer import (
    ALPHA_SWEEP_HEADERS,
    COMPARISON_HEADERS,
    GaConfig,
    GoldStandard,
    KpiBounds,
    Objective,
    OptResult,
    combine,
    normalize,
    objective,
    opt_result_filename,
    read_opt_result,
    write_alpha_sweep,
    write_comparison,
    write_opt_result,
)
from a5tune.sweep import CopMeans


def make_result(method: str = "ga", alpha: float = 0.5) -> OptResult:
    return OptResult(
        method=method,
        alpha=alpha,
        best=CopVector(128, -104, -99),
        objective=0.875,
        mean_rsrp_dbm=-88.5,
        hosr_pct=97.25,
        evaluations=84,
        trace=[0.5, 0.75, 0.875],
    )


class TestObjective:
    """Tests for normalization and the weighted objective."""

    def test_combine(self):
        """Test the weighted sum of normalized KPIs."""
        assert combine(0.9, 0.98, 0.5) == pytest.approx(0.94)
        assert combine(0.2, 0.7, 1.0) == pytest.approx(0.2)
        assert combine(0.2, 0.7, 0.0) == pytest.approx(0.7)

    def test_normalize_clips(self):
        """Test min-max scaling clamped to the unit interval."""
        values = normalize([-130.0, -90.0, -50.0], -120.0, -60.0)
        assert list(values) == [0.0, 0.5, 1.0]

    def test_objective_value(self, make_predictor):
        """Test a single-COP evaluation against a hand computation."""
        obj = Objective(
            make_predictor(lambda X: np.full(len(X), -75.0)),
            make_predictor(lambda X: np.full(len(X), 96.0)),
            KpiBounds(-90.0, -60.0, 90.0, 100.0),
            alpha=0.25,
        )
        value = objective(CopVector(64, -100, -100), obj)
        assert value == pytest.approx(0.25 * 0.5 + 0.75 * 0.6)
        assert obj.calls == 1

    def test_predict_kpis_is_not_counted(self, make_predictor):
        """Test that raw KPI estimates do not consume evaluations."""
        obj = Objective(
            make_predictor(lambda X: X[:, 1]),
            make_predictor(lambda X: np.full(len(X), 99.0)),
            KpiBounds(-120.0, -90.0, 0.0, 100.0),
        )
        rsrp, hosr = obj.predict_kpis([[64, -101, -100]])
        assert list(rsrp) == [-101.0]
        assert list(hosr) == [99.0]
        assert obj.calls == 0

    @pytest.mark.parametrize("alpha", [-0.1, 1.5])
    def test_alpha_range(self, make_predictor, alpha):
        """Test that the weight must lie in [0, 1]."""
        model = make_predictor(lambda X: X[:, 1])
        with pytest.raises(ValueError, match="alpha"):
            Objective(model, model, KpiBounds(-120.0, -90.0, 0.0, 100.0), alpha)


class TestKpiBounds:
    """Tests for KpiBounds."""

    def test_from_dataset(self):
        """Test extrema, widening a constant KPI by one unit."""
        points = CopMeans(
            cops=(CopVector(64, -100, -100), CopVector(64, -95, -100)),
            mean_rsrp_dbm=np.array([-95.0, -85.0]),
            hosr_pct=np.array([100.0, 100.0]),
        )
        bounds = KpiBounds.from_dataset(points)
        assert (bounds.rsrp_min, bounds.rsrp_max) == (-95.0, -85.0)
        assert (bounds.hosr_min, bounds.hosr_max) == (99.0, 101.0)

    def test_empty_dataset(self):
        """Test that bounds need at least one point."""
        empty = CopMeans(cops=(), mean_rsrp_dbm=np.array([]), hosr_pct=np.array([]))
        with pytest.raises(ValueError, match="empty"):
            KpiBounds.from_dataset(empty)

    def test_degenerate_bounds(self):
        """Test that min must be below max."""
        with pytest.raises(ValueError, match="RSRP"):
            KpiBounds(-90.0, -90.0, 0.0, 100.0)


class TestSettings:
    """Tests for GaConfig and GoldStandard."""

    def test_ga_defaults(self):
        """Test a 20 x 5 population within the 100-evaluation budget."""
        ga = GaConfig()
        assert ga.budget == 100

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"population": 30},
            {"population": 1},
            {"generations": 0},
            {"tournament": 0},
            {"mutation_rate": 1.5},
            {"elitism": 20},
            {"threshold_sigma_db": 0.0},
        ],
    )
    def test_invalid_ga(self, kwargs):
        """Test that invalid GA settings are rejected."""
        with pytest.raises(ValueError):
            GaConfig(**kwargs)

    def test_budget_message(self):
        """Test that oversized populations name the budget."""
        with pytest.raises(ValueError, match="budget"):
            GaConfig(population=25, generations=5)

    def test_gold_standard(self):
        """Test the midpoint and membership of the vendor box."""
        gold = GoldStandard()
        assert gold.midpoint() == CopVector(256, -105, -103)
        assert gold.contains(CopVector(256, -110, -98))
        assert not gold.contains(CopVector(320, -105, -103))
        assert not gold.contains(CopVector(256, -111, -103))

    @pytest.mark.parametrize(
        "kwargs",
        [{"th1_range": (-100, -110)}, {"th2_range": (-125, -100)}, {"ttt_ms": 99}],
    )
    def test_invalid_gold_standard(self, kwargs):
        """Test that the box must be ordered and inside the threshold range."""
        with pytest.raises(ValueError):
            GoldStandard(**kwargs)


class TestResultFiles:
    """Tests for result JSON and comparison CSVs."""

    def test_write_and_read(self, tmp_path):
        """Test that a written result reads back unchanged."""
        result = make_result()
        path = tmp_path / opt_result_filename(result)
        write_opt_result(result, path, fingerprint="abc")

        assert path.name == "opt_result_ga.json"
        assert json.loads(path.read_text())["fingerprint"] == "abc"
        assert read_opt_result(path) == result

    def test_read_missing(self, tmp_path):
        """Test that a missing file is a ValueError."""
        with pytest.raises(ValueError, match="not found"):
            read_opt_result(tmp_path / "opt_result_ga.json")

    def test_read_foreign_document(self, tmp_path):
        """Test that other JSON documents are rejected."""
        path = tmp_path / "opt_result_ga.json"
        path.write_text(json.dumps({"schema": "a5tune.model"}))
        with pytest.raises(ValueError, match="not an optimization result"):
            read_opt_result(path)

    def test_from_dict_malformed(self):
        """Test that missing fields are reported as ValueError."""
        with pytest.raises(ValueError, match="Malformed"):
            OptResult.from_dict({"method": "ga"})

    def test_write_comparison(self):
        """Test one row per method in the given order."""
        buf = io.StringIO()
        write_comparison([make_result("ga"), make_result("brute")], buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == ",".join(COMPARISON_HEADERS)
        assert lines[1] == "ga,0.875000,-88.500000,97.250000,84"
        assert lines[2].startswith("brute,")

    def test_write_alpha_sweep(self):
        """Test the best COP and KPIs per weight."""
        buf = io.StringIO()
        write_alpha_sweep([make_result("brute", 0.25)], buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == ",".join(ALPHA_SWEEP_HEADERS)
        assert lines[1] == "0.250000,128,-104,-99,0.875000,-88.500000,97.250000"
