# Copyright 2025 Christophe Roeder. All rights reserved.

"""Tests for the command-line interface."""

import logging

import pytest
import yaml
from click.testing import CliRunner

from a5tune.cli import EXIT_RUNTIME, EXIT_USAGE, main

from ..conftest import SMALL_CONFIG


@pytest.fixture(autouse=True)
def restore_logging():
    """Undo the root handler that each CLI invocation installs."""
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


def invoke(config, out_dir, *args, **kwargs):
    runner = CliRunner()
    return runner.invoke(
        main, ["--config", str(config), "--out", str(out_dir), *args], **kwargs
    )


class TestCli:
    """Tests for exit codes and the stage sequence."""

    def test_help(self):
        """Test that the group lists every stage."""
        result = CliRunner().invoke(main, ["--help"])
        assert result.exit_code == 0
        for stage in (
            "sweep",
            "train",
            "sensitivity",
            "optimize",
            "report",
            "check",
            "trace",
        ):
            assert stage in result.output

    def test_missing_config(self, tmp_path):
        """Test that a missing config file is a usage error."""
        result = invoke(tmp_path / "none.yaml", tmp_path / "out", "train")
        assert result.exit_code == EXIT_USAGE
        assert "not found" in result.output

    def test_malformed_config(self, tmp_path):
        """Test that an unparsable config file is a usage error."""
        path = tmp_path / "bad.yaml"
        path.write_text("sweep: [unclosed")
        result = invoke(path, tmp_path / "out", "sweep")
        assert result.exit_code == EXIT_USAGE
        assert "Malformed" in result.output

    def test_invalid_parallelism(self, small_config_file, tmp_path):
        """Test that parallelism below one is rejected."""
        out = tmp_path / "out"
        result = invoke(small_config_file, out, "sweep", "--parallelism", "0")
        assert result.exit_code == EXIT_USAGE

    def test_parallelism_from_environment(self, small_config_file, tmp_path):
        """Test that the parallelism option reads its environment variable."""
        result = invoke(
            small_config_file,
            tmp_path / "out",
            "sweep",
            env={"A5TUNE_PARALLELISM": "0"},
        )
        assert result.exit_code == EXIT_USAGE

    def test_train_without_sweep(self, small_config_file, tmp_path):
        """Test that training before a sweep is a usage error."""
        result = invoke(small_config_file, tmp_path / "out", "train")
        assert result.exit_code == EXIT_USAGE
        assert "run sweep first" in result.output

    def test_full_sequence(self, small_config_file, tmp_path):
        """Test every stage in order, then the error paths on its outputs."""
        out = tmp_path / "out"
        steps = [
            ["sweep"],
            ["train"],
            ["sensitivity"],
            ["optimize", "--method", "both", "--gold-standard", "--alpha-sweep", "3"],
            ["report", "--kpi", "hosr", "--ttt", "64"],
            ["report", "--kpi", "objective", "--source", "models"],
        ]
        for args in steps:
            result = invoke(small_config_file, out, *args)
            assert result.exit_code == 0, result.output

        assert (out / "report" / "hosr_ttt64.svg").exists()
        assert (out / "report" / "objective_ttt128.csv").exists()

        result = invoke(small_config_file, out, "check", "--ga-seeds", "2")
        assert result.exit_code in (0, EXIT_RUNTIME), result.output
        assert "evaluation_ratio" in result.output
        assert (out / "checks.csv").exists()

        result = invoke(small_config_file, out, "report", "--kpi", "sinr")
        assert result.exit_code == EXIT_USAGE
        assert "Unknown KPI" in result.output

        result = invoke(small_config_file, out, "sweep", "--resume")
        assert result.exit_code == 0
        assert "36 reused" in result.output

        other = tmp_path / "other.yaml"
        other.write_text(
            yaml.safe_dump({**SMALL_CONFIG, "network": {"area_side_m": 1500.0}})
        )
        result = invoke(other, out, "train")
        assert result.exit_code == EXIT_USAGE
        assert "scenario" in result.output

    def test_trace(self, small_config_file, tmp_path):
        """Test tracing one COP without any earlier stage."""
        out = tmp_path / "out"
        args = ["trace", "--ttt", "64", "--th1", "-90", "--th2", "-120"]
        result = invoke(small_config_file, out, *args, "--run-seed", "1")
        assert result.exit_code == 0, result.output
        assert "Trace complete" in result.output
        assert (out / "traces" / "events_ttt64_th1-90_th2-120_seed1.csv").exists()

    def test_trace_outside_cop_box(self, small_config_file, tmp_path):
        """Test that a TTT outside the COP set is a usage error."""
        args = ["trace", "--ttt", "100", "--th1", "-90", "--th2", "-120"]
        result = invoke(small_config_file, tmp_path / "out", *args)
        assert result.exit_code == EXIT_USAGE
        assert "COP TTT values" in result.output

    def test_check_without_train(self, small_config_file, tmp_path):
        """Test that checks before training are a usage error."""
        result = invoke(small_config_file, tmp_path / "out", "check")
        assert result.exit_code == EXIT_USAGE
        assert "run train first" in result.output
