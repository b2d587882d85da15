# Copyright 2025 Christophe Roeder. All rights reserved.

"""Heatmap reports of KPIs and the objective over the threshold plane."""

from .heatmap import (
    REPORT_KPIS,
    Heatmap,
    check_kpi,
    dataset_heatmap,
    predicted_heatmap,
    write_heatmap_csv,
)
from .svg import color_for, render_svg, write_svg

__all__ = [
    "REPORT_KPIS",
    "Heatmap",
    "check_kpi",
    "dataset_heatmap",
    "predicted_heatmap",
    "write_heatmap_csv",
    "color_for",
    "render_svg",
    "write_svg",
]
