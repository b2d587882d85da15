# Copyright 2025 Christophe Roeder. All rights reserved.

"""Standalone SVG rendering of heatmaps."""

import math
from pathlib import Path
from typing import Optional, Union

import numpy as np
from lxml import etree

from ..optimizer import GoldStandard
from .heatmap import Heatmap

SVG_NS = "http://www.w3.org/2000/svg"

CELL_PX = 14
MARGIN_LEFT = 70
MARGIN_TOP = 40
MARGIN_RIGHT = 90
MARGIN_BOTTOM = 50
MISSING_FILL = "#d9d9d9"

# Perceptually ordered ramp from dark blue through green to yellow
_RAMP_POSITIONS = np.array([0.0, 0.25, 0.5, 0.75, 1.0])
_RAMP_RGB = np.array(
    [
        [68, 1, 84],
        [59, 82, 139],
        [33, 145, 140],
        [94, 201, 98],
        [253, 231, 37],
    ],
    dtype=float,
)


def color_for(value: float, low: float, high: float) -> str:
    """Hex colour of value on the ramp; NaN maps to the missing-data grey."""
    if math.isnan(value):
        return MISSING_FILL
    t = 0.5 if high <= low else min(max((value - low) / (high - low), 0.0), 1.0)
    rgb = [int(round(np.interp(t, _RAMP_POSITIONS, _RAMP_RGB[:, c]))) for c in range(3)]
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def _el(parent: etree._Element, tag: str, **attrs: object) -> etree._Element:
    attrib = {k.replace("_", "-"): str(v) for k, v in attrs.items()}
    return etree.SubElement(parent, f"{{{SVG_NS}}}{tag}", attrib)


def _text(
    parent: etree._Element, x: float, y: float, text: str, **attrs: object
) -> None:
    node = _el(
        parent, "text", x=x, y=y, font_family="sans-serif", font_size=11, **attrs
    )
    node.text = text


def _tick_stride(n: int) -> int:
    return max(1, math.ceil(n / 8))


def render_svg(heatmap: Heatmap, gold: Optional[GoldStandard] = None) -> bytes:
    """
    Render th1 down the rows and th2 across the columns.

    When gold is given and its TTT matches the heatmap, its threshold box
    is outlined.
    """
    n1, n2 = heatmap.values.shape
    width = MARGIN_LEFT + n2 * CELL_PX + MARGIN_RIGHT
    height = MARGIN_TOP + n1 * CELL_PX + MARGIN_BOTTOM
    root = etree.Element(
        f"{{{SVG_NS}}}svg",
        nsmap={None: SVG_NS},
        width=str(width),
        height=str(height),
        viewBox=f"0 0 {width} {height}",
    )
    _text(root, MARGIN_LEFT, 20, heatmap.title, font_weight="bold")

    low, high = heatmap.value_range()
    cells = _el(root, "g", id="cells")
    for i in range(n1):
        for j in range(n2):
            _el(
                cells,
                "rect",
                x=MARGIN_LEFT + j * CELL_PX,
                y=MARGIN_TOP + i * CELL_PX,
                width=CELL_PX,
                height=CELL_PX,
                fill=color_for(float(heatmap.values[i, j]), low, high),
            )

    stride1 = _tick_stride(n1)
    for i in range(0, n1, stride1):
        y = MARGIN_TOP + i * CELL_PX + CELL_PX * 0.75
        _text(root, MARGIN_LEFT - 6, y, str(heatmap.th1_values[i]), text_anchor="end")
    stride2 = _tick_stride(n2)
    for j in range(0, n2, stride2):
        x = MARGIN_LEFT + j * CELL_PX + CELL_PX / 2
        y = MARGIN_TOP + n1 * CELL_PX + 14
        _text(root, x, y, str(heatmap.th2_values[j]), text_anchor="middle")
    _text(
        root,
        MARGIN_LEFT + n2 * CELL_PX / 2,
        height - 12,
        "Threshold2 (dBm)",
        text_anchor="middle",
    )
    _text(
        root,
        14,
        MARGIN_TOP + n1 * CELL_PX / 2,
        "Threshold1 (dBm)",
        text_anchor="middle",
        transform=f"rotate(-90 14 {MARGIN_TOP + n1 * CELL_PX / 2})",
    )

    _draw_legend(root, heatmap, low, high, MARGIN_LEFT + n2 * CELL_PX + 20)
    if gold is not None and gold.ttt_ms == heatmap.ttt_ms:
        _draw_gold_box(root, heatmap, gold)

    return etree.tostring(
        root, pretty_print=True, xml_declaration=True, encoding="UTF-8"
    )


def _draw_legend(
    root: etree._Element, heatmap: Heatmap, low: float, high: float, x: float
) -> None:
    n1 = heatmap.values.shape[0]
    steps = 20
    bar_height = n1 * CELL_PX
    legend = _el(root, "g", id="legend")
    for k in range(steps):
        # Top of the bar is the maximum
        t = 1.0 - (k + 0.5) / steps
        _el(
            legend,
            "rect",
            x=x,
            y=MARGIN_TOP + k * bar_height / steps,
            width=14,
            height=bar_height / steps,
            fill=color_for(low + t * (high - low), low, high),
        )
    _text(legend, x + 18, MARGIN_TOP + 10, f"{high:.2f}")
    _text(legend, x + 18, MARGIN_TOP + bar_height, f"{low:.2f}")


def _cell_edges(
    values: tuple[int, ...], low: int, high: int
) -> Optional[tuple[int, int]]:
    inside = [k for k, v in enumerate(values) if low <= v <= high]
    if not inside:
        return None
    return inside[0], inside[-1] + 1


def _draw_gold_box(root: etree._Element, heatmap: Heatmap, gold: GoldStandard) -> None:
    rows = _cell_edges(heatmap.th1_values, *gold.th1_range)
    cols = _cell_edges(heatmap.th2_values, *gold.th2_range)
    if rows is None or cols is None:
        return
    _el(
        root,
        "rect",
        id="gold-standard",
        x=MARGIN_LEFT + cols[0] * CELL_PX,
        y=MARGIN_TOP + rows[0] * CELL_PX,
        width=(cols[1] - cols[0]) * CELL_PX,
        height=(rows[1] - rows[0]) * CELL_PX,
        fill="none",
        stroke="#ff0000",
        stroke_width=2,
    )


def write_svg(
    heatmap: Heatmap, path: Union[str, Path], gold: Optional[GoldStandard] = None
) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(render_svg(heatmap, gold))
