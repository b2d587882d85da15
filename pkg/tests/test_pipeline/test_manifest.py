# Copyright 2025 Christophe Roeder. All rights reserved.

"""Tests for per-stage run manifests."""

import json

import pytest

from a5tune import __version__
from a5tune.pipeline import RunManifest


class TestRunManifest:
    """Tests for RunManifest."""

    def test_write(self, tmp_path):
        """Test the manifest document written next to the outputs."""
        output = tmp_path / "dataset.csv"
        output.write_text("header\n")
        manifest = RunManifest(stage="sweep", fingerprint="abc")
        with manifest.timed("sweep"):
            pass
        manifest.add_output(output)

        path = manifest.write(tmp_path)

        assert path.name == "sweep_manifest.json"
        doc = json.loads(path.read_text())
        assert doc["stage"] == "sweep"
        assert doc["fingerprint"] == "abc"
        assert doc["tool_version"] == __version__
        assert doc["outputs"] == [str(output)]
        assert doc["timings_s"]["sweep"] >= 0.0

    def test_missing_output(self, tmp_path):
        """Test that a manifest cannot name outputs that were not written."""
        manifest = RunManifest(stage="train")
        manifest.add_output(tmp_path / "models" / "hosr_gbt.json")
        with pytest.raises(RuntimeError, match="hosr_gbt.json"):
            manifest.write(tmp_path)
        assert not (tmp_path / "train_manifest.json").exists()

    def test_timing_recorded_on_error(self):
        """Test that a failing block still records its duration."""
        manifest = RunManifest(stage="optimize")
        with pytest.raises(KeyError):
            with manifest.timed("ga"):
                raise KeyError("boom")
        assert "ga" in manifest.timings_s
