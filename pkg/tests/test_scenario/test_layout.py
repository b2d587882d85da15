# Copyright 2025 Christophe Roeder. All rights reserved.

"""Tests for network layout construction."""

import pytest

from a5tune.scenario import CellKind, NetworkConfig, build_layout, site_positions


class TestNetworkConfig:
    """Tests for NetworkConfig validation."""

    def test_defaults(self):
        """Test the default three-tier deployment."""
        config = NetworkConfig()
        assert config.area_side_m == 2000.0
        assert config.macro_bands == (1.7, 2.1)
        assert config.bands == (1.7, 2.1, 3.5)
        assert config.tx_power_dbm == 30.0

    def test_bands_without_small_cells(self):
        """Test that the small-cell band is unused without small cells."""
        assert NetworkConfig(small_cells_per_site=0).bands == (1.7, 2.1)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"area_side_m": 0.0},
            {"n_macro_sites": 0},
            {"macro_bands": ()},
            {"pathloss_exponent": -1.0},
            {"shadowing_std_db": -0.5},
            {"shadowing_corr_dist_m": 0.0},
            {"prbs": {"1.7": 0}},
        ],
    )
    def test_invalid_values_raise(self, kwargs):
        """Test that out-of-range parameters are rejected."""
        with pytest.raises(ValueError):
            NetworkConfig(**kwargs)


class TestBuildLayout:
    """Tests for build_layout."""

    def test_default_cell_counts(self):
        """Test 2 sites x 2 bands x 3 sectors plus 2 small cells."""
        layout = build_layout(NetworkConfig())
        kinds = [c.kind for c in layout.cells]
        assert len(layout) == 14
        assert kinds.count(CellKind.MACRO_SECTOR) == 12
        assert kinds.count(CellKind.SMALL_OMNI) == 2

    def test_sector_bearings(self):
        """Test that sectors are spaced 120 degrees apart."""
        layout = build_layout(NetworkConfig())
        bearings = [c.bearing_deg for c in layout.cells[:3]]
        assert bearings == [0.0, 120.0, 240.0]

    def test_ids_are_contiguous(self):
        """Test that ids run 0..n-1, macro sectors first."""
        layout = build_layout(NetworkConfig())
        assert [c.id for c in layout.cells] == list(range(14))
        assert layout.cells[-1].kind == CellKind.SMALL_OMNI

    def test_site_positions(self):
        """Test that two sites sit at thirds of the horizontal midline."""
        sites = site_positions(NetworkConfig(area_side_m=1500.0))
        assert sites == [(500.0, 750.0), (1000.0, 750.0)]

    def test_arrays_follow_cells(self):
        """Test the per-cell arrays used by the vectorized link budget."""
        layout = build_layout(NetworkConfig())
        assert layout.site_xy.shape == (14, 2)
        assert list(layout.bands[:6]) == [1.7, 1.7, 1.7, 2.1, 2.1, 2.1]
        assert layout.is_sector.sum() == 12

    def test_layout_is_deterministic(self):
        """Test that the same config yields the same layout."""
        assert build_layout(NetworkConfig()) == build_layout(NetworkConfig())
