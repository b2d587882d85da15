# Copyright 2025 Christophe Roeder. All rights reserved.

"""Tests for A5/A3 entering conditions, TTT timers and HO resolution."""

import numpy as np
import pytest

from a5tune.handover import (
    DEFAULT_COP,
    CopVector,
    EventConfig,
    HoCounters,
    HoOutcome,
    KpiSample,
    TttTimer,
    a3_entering,
    a5_entering,
    accumulate_ttt,
    hosr,
    mean_rsrp,
    resolve_handover,
    update_ttt,
)


class TestCopVector:
    """Tests for CopVector."""

    def test_default_cop(self):
        """Test the gold-standard midpoint used as default."""
        assert DEFAULT_COP.as_tuple() == (256, -105, -103)
        assert str(DEFAULT_COP) == "[256ms, -105dBm, -103dBm]"

    def test_ordering_is_lexicographic(self):
        """Test that COPs sort by ttt, then th1, then th2."""
        cops = [
            CopVector(128, -100, -95),
            CopVector(64, -90, -90),
            CopVector(128, -100, -99),
        ]
        assert sorted(cops) == [cops[1], cops[2], cops[0]]

    @pytest.mark.parametrize(
        "values",
        [
            (100, -105, -103),
            (1024, -105, -103),
            (256, -121, -103),
            (256, -105, -89),
            (256, -105.5, -103),
        ],
    )
    def test_invalid_cop_raises(self, values):
        """Test non-standard TTT, out-of-box thresholds and fractional dBm."""
        with pytest.raises(ValueError):
            CopVector(*values)

    def test_integral_floats_are_accepted(self):
        """Test that 256.0 is coerced to an integer field."""
        assert CopVector(256.0, -105.0, -103.0).ttt_ms == 256


class TestA5Entering:
    """Tests for the A5 entering condition."""

    def test_strict_inequalities(self):
        """Test both sides of each threshold for the default COP."""
        cfg = EventConfig()
        assert a5_entering(-106.0, -102.0, cfg)
        assert not a5_entering(-105.0, -102.0, cfg)
        assert not a5_entering(-106.0, -103.0, cfg)

    def test_hysteresis_and_offset(self):
        """Test that hysteresis tightens both conditions and CIO helps the target."""
        cfg = EventConfig(hyst_db=1.0)
        assert not a5_entering(-105.5, -100.0, cfg)
        assert a5_entering(-106.5, -101.5, cfg)
        assert not a5_entering(-106.5, -102.5, cfg)
        assert a5_entering(-106.5, -102.5, cfg, cio_db=2.0)

    def test_exhaustive_grid_matches_inequalities(self):
        """Test the vectorized condition against the inequalities over a grid."""
        levels = np.arange(-130, -79)
        serving, target = np.meshgrid(levels, levels, indexing="ij")
        for th1 in range(-120, -89, 5):
            for th2 in range(-120, -89, 5):
                for hyst in (0, 2):
                    for cio in (-2, 0, 2):
                        cfg = EventConfig(
                            cop=CopVector(256, th1, th2), hyst_db=hyst, cio_db=cio
                        )
                        expected = (serving < th1 - hyst) & (target > th2 - cio + hyst)
                        got = a5_entering(serving, target, cfg)
                        assert np.array_equal(got, expected)


class TestA3Entering:
    """Tests for the A3 entering condition."""

    def test_offset(self):
        """Test that the target must beat serving by more than the offset."""
        cfg = EventConfig(a3_offset_db=2.0)
        assert a3_entering(-100.0, -97.5, cfg)
        assert not a3_entering(-100.0, -98.0, cfg)


class TestTttTimer:
    """Tests for time-to-trigger accumulation."""

    def test_fires_after_ttt(self):
        """Test that a 128 ms TTT fires on the fourth 32 ms step."""
        timer = TttTimer(128)
        for _ in range(3):
            timer = update_ttt(timer, True, 32)
            assert not timer.fired
        timer = update_ttt(timer, True, 32)
        assert timer.fired

    def test_miss_resets(self):
        """Test that a single miss restarts the timer."""
        timer = update_ttt(update_ttt(TttTimer(128), True, 32), True, 32)
        timer = update_ttt(timer, False, 32)
        assert timer.elapsed_ms == 0

    def test_array_form(self):
        """Test accumulate_ttt on several timers at once."""
        elapsed = np.array([0, 32, 64])
        holds = np.array([True, False, True])
        assert list(accumulate_ttt(elapsed, holds, 32)) == [32, 0, 96]


class TestResolveHandover:
    """Tests for HO resolution and KPI reductions."""

    def test_failure_below_rlf(self):
        """Test that any sample below the RLF threshold fails the attempt."""
        cfg = EventConfig(rlf_threshold_dbm=-123.0)
        assert resolve_handover([-110.0, -124.0, -100.0], cfg) == HoOutcome.FAILURE
        assert resolve_handover([-110.0, -122.0], cfg) == HoOutcome.SUCCESS

    def test_default_rlf_threshold(self):
        """Test the calibrated default and its strict comparison."""
        cfg = EventConfig()
        assert cfg.rlf_threshold_dbm == -110.0
        assert resolve_handover([-110.0], cfg) == HoOutcome.SUCCESS
        assert resolve_handover([-110.5], cfg) == HoOutcome.FAILURE

    def test_no_rlf_model_always_succeeds(self):
        """Test that disabling the RLF threshold makes every attempt succeed."""
        cfg = EventConfig(rlf_threshold_dbm=None)
        assert resolve_handover([-200.0], cfg) == HoOutcome.SUCCESS

    def test_hosr(self):
        """Test HOSR with and without attempts."""
        assert hosr(HoCounters()) == 100.0
        assert hosr(HoCounters(hos=3, hof=1)) == 75.0

    def test_counters_record(self):
        """Test that record() feeds HOS and HOF."""
        counters = HoCounters()
        counters.record(True)
        counters.record(False)
        assert (counters.hos, counters.hof, counters.attempts) == (1, 1, 2)

    def test_mean_rsrp(self):
        """Test averaging in the dB domain and the empty case."""
        assert mean_rsrp([-80.0, -100.0]) == -90.0
        with pytest.raises(ValueError):
            mean_rsrp([])

    def test_kpi_sample_validation(self):
        """Test that HOSR outside [0, 100] is rejected."""
        with pytest.raises(ValueError):
            KpiSample(-90.0, 101.0)
