"""Per-chart-type SVG rendering.

Direct geometry, no plotting library: bars and arcs are computed from the
dataset values and clipped to the slot with fixed margins. Every renderer is
a pure function of (chart, slot, palette), so equal inputs produce identical
fragment bytes.
"""

from __future__ import annotations

import json
import math
from functools import lru_cache
from importlib import resources

from dashgen.dsl.model import Channel, ChartSpec, ChartType, FieldKind
from dashgen.errors import DashgenError
from dashgen.renderer.svg import el, fmt, text_el, truncate_label
from dashgen.stylization.palette import series_color
from dashgen.stylization.types import Palette, PaletteKind, Rgb
from dashgen.stylization.color import to_hex

Rect = tuple[float, float, float, float]

TEXT_COLOR = "#d9e2ef"
MUTED_COLOR = "#8ba0b8"
AXIS_COLOR = "#3c4a5f"
PANEL_COLOR = "#121a28"

#: Minimum slot size (width, height) per chart type; smaller slots fail.
MIN_SLOT: dict[ChartType, tuple[float, float]] = {
    ChartType.PIE: (100, 90),
    ChartType.MAP: (140, 100),
    ChartType.MATRIX: (120, 90),
    ChartType.TABLE: (160, 90),
    ChartType.GLYPH: (90, 80),
    ChartType.TEXT: (70, 50),
    ChartType.DIAGRAM: (120, 90),
    ChartType.CIRCLE: (100, 90),
}
DEFAULT_MIN_SLOT = (48, 36)


class SlotTooSmall(DashgenError):
    """Slot rectangle is below the chart type's minimum size."""


@lru_cache(maxsize=1)
def map_regions() -> dict:
    return json.loads(
        resources.files("dashgen")
        .joinpath("data/map-regions.json")
        .read_text(encoding="utf-8")
    )


def _column(chart: ChartSpec, channel: Channel) -> list:
    name = chart.encoding_map().get(channel)
    return chart.dataset.column(name) if name else []


def _mix(c1: Rgb, c2: Rgb, t: float) -> str:
    t = max(0.0, min(1.0, t))
    return to_hex(tuple(round(a + (b - a) * t) for a, b in zip(c1, c2)))


def _value_color(palette: Palette, t: float) -> str:
    """Color for a normalized [0,1] value under the global palette."""
    if palette.kind is PaletteKind.SEQUENTIAL:
        idx = round(t * (len(palette.colors) - 1))
        return to_hex(palette.colors[idx])
    return _mix((18, 26, 40), palette.colors[0], 0.25 + 0.75 * t)


def _plot_area(slot: Rect, pad_ratio: float = 0.08) -> Rect:
    x, y, w, h = slot
    pad = max(4.0, min(w, h) * pad_ratio)
    return (x + pad, y + pad, w - 2 * pad, h - 2 * pad)


def _category_index(values: list) -> dict:
    order: dict = {}
    for v in values:
        if v not in order:
            order[v] = len(order)
    return order


def _format_value(value: float) -> str:
    if abs(value) >= 1000:
        return f"{value:,.0f}"
    if abs(value) >= 100:
        return f"{value:.0f}"
    return fmt(float(value))


# --- chart renderers --------------------------------------------------------


def _render_bar(chart: ChartSpec, slot: Rect, palette: Palette) -> str:
    x, y, w, h = _plot_area(slot)
    labels = _column(chart, Channel.X)
    values = [float(v) for v in _column(chart, Channel.Y)]
    colors = _column(chart, Channel.COLOR)
    if not values:
        return ""
    vmax = max(values) or 1.0
    n = len(values)
    step = w / n
    bar_w = step * 0.68
    cat_idx = _category_index(colors) if colors else {}
    parts = [el("line", {"stroke": AXIS_COLOR, "stroke-width": 1,
                         "x1": x, "x2": x + w, "y1": y + h, "y2": y + h})]
    label_h = 12.0 if h > 60 else 0.0
    plot_h = h - label_h
    for i, v in enumerate(values):
        bh = plot_h * (v / vmax)
        fill = (
            to_hex(series_color(palette, cat_idx[colors[i]]))
            if colors
            else to_hex(series_color(palette, 0))
        )
        parts.append(
            el("rect", {"fill": fill, "height": bh, "width": bar_w,
                        "x": x + i * step + (step - bar_w) / 2,
                        "y": y + plot_h - bh})
        )
    if label_h and labels and n <= 10:
        for i, label in enumerate(labels):
            parts.append(
                text_el(x + i * step + step / 2, y + h - 2,
                        truncate_label(str(label), max(3, int(step / 7))),
                        9, MUTED_COLOR, anchor="middle")
            )
    return "".join(parts)


def _series_points(chart: ChartSpec) -> dict:
    """Group (x order index, y value) pairs by color series."""
    xs = _column(chart, Channel.X)
    ys = [float(v) for v in _column(chart, Channel.Y)]
    colors = _column(chart, Channel.COLOR) or [None] * len(xs)
    x_order = _category_index(xs)
    series: dict = {}
    for xv, yv, cv in zip(xs, ys, colors):
        series.setdefault(cv, []).append((x_order[xv], yv))
    for pts in series.values():
        pts.sort(key=lambda p: p[0])
    return series


def _render_line(chart: ChartSpec, slot: Rect, palette: Palette, fill_area: bool = False) -> str:
    x, y, w, h = _plot_area(slot)
    series = _series_points(chart)
    if not series:
        return ""
    all_y = [p[1] for pts in series.values() for p in pts]
    all_x = [p[0] for pts in series.values() for p in pts]
    vmax = max(all_y) or 1.0
    xmax = max(all_x) or 1
    parts = [el("line", {"stroke": AXIS_COLOR, "stroke-width": 1,
                         "x1": x, "x2": x + w, "y1": y + h, "y2": y + h})]
    for s, (key, pts) in enumerate(sorted(series.items(), key=lambda kv: str(kv[0]))):
        color = to_hex(series_color(palette, s))
        coords = [
            (x + w * (px / xmax if xmax else 0), y + h - h * (py / vmax))
            for px, py in pts
        ]
        point_str = " ".join(f"{fmt(cx)},{fmt(cy)}" for cx, cy in coords)
        if fill_area and coords:
            area_pts = (
                f"{fmt(coords[0][0])},{fmt(y + h)} {point_str} "
                f"{fmt(coords[-1][0])},{fmt(y + h)}"
            )
            parts.append(
                el("polygon", {"fill": color, "opacity": 0.25, "points": area_pts})
            )
        parts.append(
            el("polyline", {"fill": "none", "points": point_str,
                            "stroke": color, "stroke-width": 2})
        )
    return "".join(parts)


def _render_area(chart: ChartSpec, slot: Rect, palette: Palette) -> str:
    return _render_line(chart, slot, palette, fill_area=True)


def _render_point(chart: ChartSpec, slot: Rect, palette: Palette) -> str:
    x, y, w, h = _plot_area(slot)
    xs = [float(v) for v in _column(chart, Channel.X)]
    ys = [float(v) for v in _column(chart, Channel.Y)]
    colors = _column(chart, Channel.COLOR)
    if not xs or not ys:
        return ""
    xmin, xmax = min(xs), max(xs)
    ymin, ymax = min(ys), max(ys)
    xspan = (xmax - xmin) or 1.0
    yspan = (ymax - ymin) or 1.0
    cat_idx = _category_index(colors) if colors else {}
    parts = [el("line", {"stroke": AXIS_COLOR, "stroke-width": 1,
                         "x1": x, "x2": x + w, "y1": y + h, "y2": y + h})]
    for i, (px, py) in enumerate(zip(xs, ys)):
        fill = (
            to_hex(series_color(palette, cat_idx[colors[i]]))
            if colors
            else to_hex(series_color(palette, 0))
        )
        parts.append(
            el("circle", {"cx": x + w * (px - xmin) / xspan,
                          "cy": y + h - h * (py - ymin) / yspan,
                          "fill": fill, "opacity": 0.85, "r": 3})
        )
    return "".join(parts)


def _arc_point(cx: float, cy: float, r: float, angle_deg: float) -> tuple[float, float]:
    rad = math.radians(angle_deg)
    return (cx + r * math.cos(rad), cy + r * math.sin(rad))


def _render_pie(chart: ChartSpec, slot: Rect, palette: Palette) -> str:
    x, y, w, h = _plot_area(slot)
    values = [float(v) for v in _column(chart, Channel.VALUE)]
    labels = _column(chart, Channel.LABEL)
    total = sum(values)
    if not values or total <= 0:
        return ""
    cx, cy = x + w / 2, y + h / 2
    r = min(w, h) / 2 * 0.86
    parts = []
    angle = -90.0
    for i, v in enumerate(values):
        sweep = 360.0 * v / total
        if sweep >= 360.0:
            parts.append(el("circle", {
                "cx": cx, "cy": cy, "fill": to_hex(series_color(palette, i)), "r": r}))
            break
        start = _arc_point(cx, cy, r, angle)
        end = _arc_point(cx, cy, r, angle + sweep)
        large = 1 if sweep > 180.0 else 0
        d = (
            f"M{fmt(cx)} {fmt(cy)} L{fmt(start[0])} {fmt(start[1])} "
            f"A{fmt(r)} {fmt(r)} 0 {large} 1 {fmt(end[0])} {fmt(end[1])} Z"
        )
        parts.append(el("path", {
            "d": d, "fill": to_hex(series_color(palette, i)),
            "stroke": PANEL_COLOR, "stroke-width": 1}))
        angle += sweep
    if labels and h > 100:
        for i, label in enumerate(labels[:6]):
            parts.append(
                text_el(x + 4, y + 12 + i * 12,
                        truncate_label(str(label), 14), 9, MUTED_COLOR)
            )
    return "".join(parts)


def _render_map(chart: ChartSpec, slot: Rect, palette: Palette) -> str:
    x, y, w, h = _plot_area(slot)
    asset = map_regions()
    vw, vh = asset["viewbox"]
    scale = min(w / vw, h / vh)
    ox = x + (w - vw * scale) / 2
    oy = y + (h - vh * scale) / 2
    values = [float(v) for v in _column(chart, Channel.VALUE)]
    labels = _column(chart, Channel.LABEL)
    vmax = max(values) if values else 1.0
    parts = []
    for i, region in enumerate(asset["regions"]):
        pts = [(ox + px * scale, oy + py * scale) for px, py in region["points"]]
        point_str = " ".join(f"{fmt(px)},{fmt(py)}" for px, py in pts)
        t = (values[i] / vmax) if i < len(values) and vmax else 0.08
        parts.append(
            el("polygon", {"fill": _value_color(palette, t),
                           "points": point_str, "stroke": AXIS_COLOR,
                           "stroke-width": 0.8})
        )
        if i < len(labels) and scale > 1.2:
            cx = sum(p[0] for p in pts) / len(pts)
            cy = sum(p[1] for p in pts) / len(pts)
            parts.append(
                text_el(cx, cy, truncate_label(str(labels[i]), 10), 8,
                        TEXT_COLOR, anchor="middle")
            )
    return "".join(parts)


def _render_matrix(chart: ChartSpec, slot: Rect, palette: Palette) -> str:
    x, y, w, h = _plot_area(slot)
    xs = _column(chart, Channel.X)
    ys = _column(chart, Channel.Y)
    values = [float(v) for v in _column(chart, Channel.COLOR)]
    if not values:
        return ""
    x_idx = _category_index(xs)
    y_idx = _category_index(ys)
    cols, rows = len(x_idx), len(y_idx)
    cw, ch = w / cols, h / rows
    vmax = max(values) or 1.0
    parts = []
    for xv, yv, v in zip(xs, ys, values):
        parts.append(
            el("rect", {"fill": _value_color(palette, v / vmax),
                        "height": ch - 1, "width": cw - 1,
                        "x": x + x_idx[xv] * cw, "y": y + y_idx[yv] * ch})
        )
    return "".join(parts)


def _render_table(chart: ChartSpec, slot: Rect, palette: Palette) -> str:
    x, y, w, h = _plot_area(slot, pad_ratio=0.05)
    fields = chart.dataset.fields
    row_h = 16.0
    max_rows = max(1, int(h / row_h) - 1)
    rows = chart.dataset.rows[:max_rows]
    col_w = w / max(1, len(fields))
    parts = [el("line", {"stroke": to_hex(series_color(palette, 0)),
                         "stroke-width": 1.2, "x1": x, "x2": x + w,
                         "y1": y + row_h - 3, "y2": y + row_h - 3})]
    max_chars = max(3, int(col_w / 6.5))
    for c, f in enumerate(fields):
        parts.append(
            text_el(x + c * col_w, y + row_h - 6,
                    truncate_label(f.name, max_chars), 9.5, TEXT_COLOR,
                    weight="bold")
        )
    for r, row in enumerate(rows):
        ry = y + (r + 2) * row_h - 6
        if ry > y + h:
            break
        for c, cell in enumerate(row):
            content = _format_value(cell) if isinstance(cell, (int, float)) else str(cell)
            parts.append(
                text_el(x + c * col_w, ry, truncate_label(content, max_chars),
                        9, MUTED_COLOR)
            )
    return "".join(parts)


def _render_text(chart: ChartSpec, slot: Rect, palette: Palette) -> str:
    x, y, w, h = _plot_area(slot)
    values = _column(chart, Channel.VALUE)
    labels = _column(chart, Channel.LABEL)
    if not values:
        return ""
    value = float(values[-1])
    enc = chart.encoding_map()
    unit = next(
        (f.unit for f in chart.dataset.fields
         if f.name == enc.get(Channel.VALUE) and f.unit),
        None,
    )
    size = min(h * 0.52, w / max(4, len(_format_value(value))) * 1.6)
    parts = [
        text_el(x + w / 2, y + h / 2 + size * 0.35, _format_value(value),
                size, to_hex(series_color(palette, 0)), anchor="middle",
                weight="bold")
    ]
    if unit:
        parts.append(
            text_el(x + w / 2, y + h / 2 + size * 0.35 + 14, unit, 10,
                    MUTED_COLOR, anchor="middle")
        )
    if labels:
        parts.append(
            text_el(x + w / 2, y + 12, truncate_label(str(labels[-1]), 24),
                    10, MUTED_COLOR, anchor="middle")
        )
    return "".join(parts)


def _next_pow10(value: float) -> float:
    return 10 ** math.ceil(math.log10(max(abs(value), 1e-9)))


def _render_glyph(chart: ChartSpec, slot: Rect, palette: Palette) -> str:
    x, y, w, h = _plot_area(slot)
    values = _column(chart, Channel.VALUE)
    if not values:
        return ""
    value = float(values[-1])
    enc = chart.encoding_map()
    unit = next(
        (f.unit for f in chart.dataset.fields
         if f.name == enc.get(Channel.VALUE) and f.unit),
        None,
    )
    fraction = value / 100.0 if unit == "%" else value / _next_pow10(value)
    fraction = max(0.0, min(1.0, fraction))
    cx, cy = x + w / 2, y + h * 0.62
    r = min(w, h) / 2 * 0.8
    start_angle, sweep_total = 150.0, 240.0

    def arc(sweep: float, color: str, width: float) -> str:
        a0 = _arc_point(cx, cy, r, start_angle)
        a1 = _arc_point(cx, cy, r, start_angle + sweep)
        large = 1 if sweep > 180.0 else 0
        return el("path", {
            "d": f"M{fmt(a0[0])} {fmt(a0[1])} A{fmt(r)} {fmt(r)} 0 {large} 1 "
                 f"{fmt(a1[0])} {fmt(a1[1])}",
            "fill": "none", "stroke": color, "stroke-width": width})

    parts = [
        arc(sweep_total, AXIS_COLOR, 6.0),
        arc(max(sweep_total * fraction, 0.001), to_hex(series_color(palette, 0)), 6.0),
        text_el(cx, cy + 4, _format_value(value), min(18.0, r * 0.6),
                TEXT_COLOR, anchor="middle", weight="bold"),
    ]
    if unit:
        parts.append(text_el(cx, cy + 18, unit, 9, MUTED_COLOR, anchor="middle"))
    return "".join(parts)


def _render_diagram(chart: ChartSpec, slot: Rect, palette: Palette) -> str:
    x, y, w, h = _plot_area(slot)
    labels = _column(chart, Channel.LABEL)[:8]
    if not labels:
        return ""
    cx, cy = x + w / 2, y + h / 2
    r = min(w, h) / 2 * 0.7
    parts = [el("circle", {"cx": cx, "cy": cy,
                           "fill": to_hex(series_color(palette, 0)), "r": 6})]
    for i, label in enumerate(labels):
        angle = -90.0 + 360.0 * i / len(labels)
        px, py = _arc_point(cx, cy, r, angle)
        parts.append(el("line", {"stroke": AXIS_COLOR, "stroke-width": 1,
                                 "x1": cx, "x2": px, "y1": cy, "y2": py}))
        parts.append(el("circle", {
            "cx": px, "cy": py,
            "fill": to_hex(series_color(palette, (i + 1))), "r": 4}))
        if h > 90:
            parts.append(
                text_el(px, py - 7, truncate_label(str(label), 10), 8,
                        MUTED_COLOR, anchor="middle")
            )
    return "".join(parts)


def _render_circle(chart: ChartSpec, slot: Rect, palette: Palette) -> str:
    x, y, w, h = _plot_area(slot)
    values = [float(v) for v in _column(chart, Channel.VALUE)]
    if not values:
        return ""
    cx, cy = x + w / 2, y + h / 2
    rmax = min(w, h) / 2 * 0.85
    vmax = max(values) or 1.0
    parts = [el("circle", {"cx": cx, "cy": cy, "fill": "none",
                           "r": rmax, "stroke": AXIS_COLOR,
                           "stroke-width": 0.8})]
    for i, v in enumerate(values):
        angle = -90.0 + 360.0 * i / len(values)
        px, py = _arc_point(cx, cy, rmax * (v / vmax), angle)
        parts.append(el("line", {
            "stroke": to_hex(series_color(palette, i)), "stroke-linecap": "round",
            "stroke-width": 5, "x1": cx, "x2": px, "y1": cy, "y2": py}))
    return "".join(parts)


def _render_placeholder(chart: ChartSpec, slot: Rect, palette: Palette) -> str:
    x, y, w, h = _plot_area(slot)
    return (
        el("rect", {"fill": "none", "height": h, "stroke": AXIS_COLOR,
                    "stroke-dasharray": "4 3", "stroke-width": 1,
                    "width": w, "x": x, "y": y})
        + text_el(x + w / 2, y + h / 2, chart.chart_type.value.lower(), 10,
                  MUTED_COLOR, anchor="middle")
    )


_RENDERERS = {
    ChartType.BAR: _render_bar,
    ChartType.LINE: _render_line,
    ChartType.AREA: _render_area,
    ChartType.POINT: _render_point,
    ChartType.PIE: _render_pie,
    ChartType.MAP: _render_map,
    ChartType.MATRIX: _render_matrix,
    ChartType.TABLE: _render_table,
    ChartType.TEXT: _render_text,
    ChartType.GLYPH: _render_glyph,
    ChartType.DIAGRAM: _render_diagram,
    ChartType.CIRCLE: _render_circle,
}


def render_chart(chart: ChartSpec, slot: Rect, palette: Palette) -> str:
    """SVG fragment for one chart clipped into the slot rectangle."""
    _, _, w, h = slot
    min_w, min_h = MIN_SLOT.get(chart.chart_type, DEFAULT_MIN_SLOT)
    if w < min_w or h < min_h:
        raise SlotTooSmall(
            f"{chart.chart_type.value} needs at least {min_w}x{min_h}px, "
            f"slot is {w:.0f}x{h:.0f}px"
        )
    renderer = _RENDERERS.get(chart.chart_type, _render_placeholder)
    return renderer(chart, slot, palette)
