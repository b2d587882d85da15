# Copyright 2025 Christophe Roeder. All rights reserved.

"""Tests for the acceptance checks on surrogates and the GA."""

import csv
import io
import logging

import numpy as np
import pytest

from a5tune.optimizer import GaConfig, KpiBounds, Objective
from a5tune.pipeline.checks import (
    CHECK_HEADERS,
    FAIL,
    FLAG,
    PASS,
    CheckResult,
    ga_gap_checks,
    model_ordering_checks,
    sensitivity_checks,
    write_checks_csv,
)
from a5tune.sensitivity import SobolConfig, SobolIndices, sobol_indices
from a5tune.surrogate import EvalEntry, EvalReport
from a5tune.sweep import SweepSpec

BOUNDS = KpiBounds(rsrp_min=-120.0, rsrp_max=-60.0, hosr_min=0.0, hosr_max=100.0)
NAMES = ("ttt_ms", "th1_dbm", "th2_dbm")


def indices(first_order) -> SobolIndices:
    zeros = np.zeros(len(NAMES))
    return SobolIndices(
        names=NAMES,
        first_order=np.asarray(first_order, dtype=float),
        first_order_se=zeros,
        total_order=np.asarray(first_order, dtype=float),
        total_order_se=zeros,
        variance=1.0,
        zero_variance=False,
        evaluations=0,
    )


def constant(value):
    return lambda X: np.full(len(X), value)


def bowl(X):
    return -80.0 - np.abs(X[:, 1] + 105.0) - np.abs(X[:, 2] + 100.0)


class TestModelOrdering:
    """Tests for model_ordering_checks."""

    def test_pass_fail_and_skip(self):
        """Test each tree kind against linear, skipping missing pairs."""
        report = EvalReport(
            entries=[
                EvalEntry("gbt", "mean_rsrp", 0.5),
                EvalEntry("linear", "mean_rsrp", 1.0),
                EvalEntry("gbt", "hosr", 2.0),
                EvalEntry("linear", "hosr", 5.0),
                EvalEntry("random_forest", "hosr", 6.0),
            ]
        )
        results = model_ordering_checks(report)

        assert [(r.subject, r.status) for r in results] == [
            ("gbt/mean_rsrp", PASS),
            ("gbt/hosr", PASS),
            ("random_forest/hosr", FAIL),
        ]
        assert results[2].limit == 5.0
        assert results[2].failed

    def test_no_baseline(self):
        """Test that a report without the linear model yields no checks."""
        report = EvalReport(entries=[EvalEntry("gbt", "hosr", 2.0)])
        assert model_ordering_checks(report) == []

    def test_equal_rmse_fails(self):
        """Test that a tie with the baseline does not pass."""
        report = EvalReport(
            entries=[EvalEntry("linear", "hosr", 3.0), EvalEntry("gbt", "hosr", 3.0)]
        )
        assert model_ordering_checks(report)[0].status == FAIL


class TestSensitivityChecks:
    """Tests for sensitivity_checks."""

    def test_expected_trend_passes(self):
        """Test th2 dominant for both KPIs and a negligible TTT for HOSR."""
        results = sensitivity_checks(
            {"mean_rsrp": indices([0.1, 0.2, 0.6]), "hosr": indices([0.01, 0.3, 0.6])}
        )
        assert [(r.check, r.subject, r.status) for r in results] == [
            ("th2_dbm_dominant", "mean_rsrp", PASS),
            ("th2_dbm_dominant", "hosr", PASS),
            ("ttt_ms_minor", "hosr", PASS),
        ]

    def test_deviations_are_flagged(self, caplog):
        """Test that a deviating trend is flagged with a warning, never failed."""
        with caplog.at_level(logging.WARNING):
            results = sensitivity_checks({"hosr": indices([0.2, 0.5, 0.1])})

        assert [r.status for r in results] == [FLAG, FLAG]
        assert not any(r.failed for r in results)
        assert results[0].value == pytest.approx(0.1)
        assert results[0].limit == pytest.approx(0.5)
        assert caplog.text.count("Sensitivity trend deviates") == 2

    def test_on_estimated_indices(self, make_predictor):
        """Test the checks on indices estimated from a th2-only surrogate."""
        model = make_predictor(lambda X: X[:, 2])
        estimated = sobol_indices(model.predict_many, SobolConfig(n_base=1024))
        results = sensitivity_checks({"hosr": estimated})
        assert all(r.status == PASS for r in results)


class TestGaGap:
    """Tests for ga_gap_checks."""

    def test_flat_objective_on_full_box(self, make_predictor):
        """Test every seed within the gap and the full-box evaluation ratio."""
        obj = Objective(
            make_predictor(constant(-90.0)), make_predictor(constant(50.0)), BOUNDS
        )
        within, ratio = ga_gap_checks(obj, GaConfig(), n_seeds=3, min_within=3)

        assert within.check == "ga_gap_within"
        assert within.value == 3.0
        assert within.status == PASS
        assert ratio.check == "evaluation_ratio"
        assert ratio.value >= 48.0
        assert ratio.status == PASS

    def test_small_grid_fails_ratio(self, make_predictor):
        """Test that a grid barely larger than the GA budget fails the ratio."""
        obj = Objective(make_predictor(bowl), make_predictor(constant(50.0)), BOUNDS)
        spec = SweepSpec(
            ttt_values=(64, 128), th1_range=(-110, -100, 1), th2_range=(-105, -95, 1)
        )
        within, ratio = ga_gap_checks(obj, GaConfig(), spec=spec, n_seeds=2)

        assert 0.0 <= within.value <= 2.0
        assert within.status == FAIL
        assert ratio.value < 48.0
        assert ratio.status == FAIL

    def test_needs_a_seed(self, make_predictor):
        """Test that zero seeds is a usage error."""
        obj = Objective(
            make_predictor(constant(-90.0)), make_predictor(constant(50.0)), BOUNDS
        )
        with pytest.raises(ValueError, match="n_seeds"):
            ga_gap_checks(obj, n_seeds=0)


class TestCheckResult:
    """Tests for CheckResult rendering."""

    def test_csv_rows(self):
        """Test the header and six-decimal rows."""
        buf = io.StringIO()
        write_checks_csv([CheckResult("ttt_ms_minor", "hosr", 0.01, 0.05, PASS)], buf)
        rows = list(csv.reader(io.StringIO(buf.getvalue())))
        assert rows == [
            CHECK_HEADERS,
            ["ttt_ms_minor", "hosr", "0.010000", "0.050000", "pass"],
        ]

    def test_str(self):
        """Test the one-line summary."""
        result = CheckResult("ga_gap_within", "20 seeds", 17.0, 18.0, FAIL)
        assert str(result) == "ga_gap_within [20 seeds]: 17.0000 (limit 18.0000) fail"
