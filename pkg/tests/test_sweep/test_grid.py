# Copyright 2025 Christophe Roeder. All rights reserved.

"""Tests for sweep specifications and COP grid enumeration."""

import pytest

from a5tune.handover import CopVector
from a5tune.sweep import SweepSpec, cop_grid, grid_size, range_values


class TestSweepSpec:
    """Tests for SweepSpec validation."""

    def test_defaults(self):
        """Test the default COP box at 1 dB granularity."""
        spec = SweepSpec()
        assert spec.ttt_values == (64, 128, 256, 320, 512)
        assert spec.th1_range == (-120, -90, 1)
        assert spec.seeds == (1, 2, 3)

    def test_lists_are_normalized(self):
        """Test that list inputs become tuples of ints."""
        spec = SweepSpec(ttt_values=[64], th1_range=[-110, -100, 5], seeds=[4])
        assert spec.ttt_values == (64,)
        assert spec.th1_range == (-110, -100, 5)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"ttt_values": ()},
            {"ttt_values": (64, 64)},
            {"ttt_values": (100000,)},
            {"th1_range": (-110, -100, 3)},
            {"th1_range": (-100, -110, 1)},
            {"th2_range": (-130, -100, 1)},
            {"seeds": ()},
            {"seeds": (1, 1)},
            {"seeds": (-1,)},
        ],
    )
    def test_invalid_specs_raise(self, kwargs):
        """Test that malformed axes and seeds are rejected."""
        with pytest.raises(ValueError):
            SweepSpec(**kwargs)


class TestCopGrid:
    """Tests for cop_grid."""

    def test_default_grid_size(self):
        """Test 5 x 31 x 31 points."""
        spec = SweepSpec()
        grid = cop_grid(spec)
        assert len(grid) == 4805
        assert grid_size(spec) == 4805

    def test_grid_is_lexicographic(self):
        """Test that the grid is sorted with no duplicates."""
        grid = cop_grid(SweepSpec())
        assert grid == sorted(set(grid))
        assert grid[0] == CopVector(64, -120, -120)
        assert grid[-1] == CopVector(512, -90, -90)

    def test_small_grid(self, small_spec):
        """Test a coarse grid with unsorted TTT input."""
        spec = SweepSpec(
            ttt_values=(128, 64), th1_range=(-110, -100, 5), th2_range=(-100, -100, 1)
        )
        grid = cop_grid(spec)
        assert [c.as_tuple() for c in grid[:3]] == [
            (64, -110, -100),
            (64, -105, -100),
            (64, -100, -100),
        ]
        assert grid_size(small_spec) == len(cop_grid(small_spec)) == 18

    def test_range_values_inclusive(self):
        """Test that the stop value is part of the range."""
        assert range_values((-110, -100, 5)) == [-110, -105, -100]
