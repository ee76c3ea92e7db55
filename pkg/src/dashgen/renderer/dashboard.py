"""Whole-dashboard rendering and thumbnails.

The layout tree is realized into pixel rectangles below a title banner
(fractions snapped to the reference grid), each view gets its embellishment
border, a title strip, and its charts arranged by the small-multiple
descriptor. Output is a standalone SVG 1.1 document whose 64-bit content
hash identifies the prototype.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from dashgen.assembly.grid import ReferenceGrid
from dashgen.assembly.multiples import compose_small_multiple, slot_rects
from dashgen.assembly.tree import realize_rects
from dashgen.dsl.model import DashboardSpec, ViewSpec
from dashgen.errors import EvaluationRequired
from dashgen.evaluator import evaluate_spec
from dashgen.renderer.charts import (
    MUTED_COLOR,
    PANEL_COLOR,
    TEXT_COLOR,
    Rect,
    render_chart,
)
from dashgen.renderer.svg import el, svg_document, text_el, truncate_label
from dashgen.stylization.color import to_hex
from dashgen.stylization.embellish import border_fragment, icon_fragment
from dashgen.stylization.types import EmbellishmentKind, EmbellishmentSpec, Palette

BACKGROUND = "#0b111d"
BANNER_HEIGHT = 56.0
VIEW_GAP = 5.0
VIEW_TITLE_HEIGHT = 22.0


@dataclass(frozen=True)
class RenderedPrototype:
    """Standalone vector document plus its identifying content hash."""

    width: int
    height: int
    document: str
    content_hash: str
    body: str  # inner markup, reused for thumbnail wrapping

    @classmethod
    def create(cls, width: int, height: int, body: str) -> RenderedPrototype:
        document = svg_document(width, height, body)
        digest = hashlib.blake2b(
            document.encode("utf-8"), digest_size=8
        ).hexdigest()
        return cls(
            width=width,
            height=height,
            document=document,
            content_hash=digest,
            body=body,
        )

    def to_payload(self) -> dict:
        return {
            "width": self.width,
            "height": self.height,
            "content_hash": self.content_hash,
        }


def _view_fragment(
    view: ViewSpec, rect: Rect, palette: Palette, style_embellishments
) -> str:
    x, y, w, h = rect
    ix, iy, iw, ih = (
        x + VIEW_GAP,
        y + VIEW_GAP,
        w - 2 * VIEW_GAP,
        h - 2 * VIEW_GAP,
    )
    parts = [
        el("rect", {"fill": PANEL_COLOR, "height": ih, "rx": 3,
                    "width": iw, "x": ix, "y": iy})
    ]
    border = next(
        (e for e in style_embellishments if e.kind is EmbellishmentKind.BORDER),
        None,
    )
    if border is not None:
        parts.append(border_fragment(border, ix, iy, iw, ih))
    icon = next(
        (e for e in style_embellishments if e.kind is EmbellishmentKind.ICON),
        None,
    )
    title_x = ix + 8
    if icon is not None:
        parts.append(icon_fragment(icon, ix + 6, iy + 5, 12))
        title_x = ix + 22
    parts.append(
        text_el(title_x, iy + 15, truncate_label(view.title, max(8, int(iw / 8))),
                11, TEXT_COLOR, weight="bold")
    )
    content = (ix + 2, iy + VIEW_TITLE_HEIGHT, iw - 4, ih - VIEW_TITLE_HEIGHT - 2)
    descriptor = compose_small_multiple(view)
    for slot, srect in zip(descriptor.slots, slot_rects(descriptor, content)):
        chart = view.charts[slot.chart_index]
        parts.append(render_chart(chart, srect, palette))
    return el("g", {"data-view": view.id}, parts)


def render_dashboard(
    spec: DashboardSpec, grid: ReferenceGrid | None = None
) -> RenderedPrototype:
    """Render an evaluated spec into a full dashboard prototype document."""
    verdict = evaluate_spec(spec)
    if not verdict.passed:
        raise EvaluationRequired(
            "spec fails evaluation: "
            + "; ".join(rule for rule, _, _ in verdict.violations)
        )
    width, height = spec.layout.screen
    grid = grid or ReferenceGrid(screen=spec.layout.screen)
    content = (0.0, BANNER_HEIGHT, float(width), float(height) - BANNER_HEIGHT)
    rects = realize_rects(spec.layout, snap=grid, bounds=content)

    theme = to_hex(spec.style.theme_color)
    parts = [
        el("rect", {"fill": BACKGROUND, "height": height, "width": width,
                    "x": 0, "y": 0}),
        el("rect", {"fill": theme, "height": 3, "width": width, "x": 0,
                    "y": BANNER_HEIGHT - 3}),
        text_el(width / 2, BANNER_HEIGHT / 2 + 8, spec.title, 24, TEXT_COLOR,
                anchor="middle", weight="bold"),
        text_el(width - 16, BANNER_HEIGHT / 2 + 8, spec.domain.upper(), 11,
                MUTED_COLOR, anchor="end"),
    ]
    for view in spec.views:
        parts.append(
            _view_fragment(
                view, rects[view.id], spec.style.palette, spec.style.embellishments
            )
        )
    return RenderedPrototype.create(width, height, "".join(parts))


def render_thumbnail(prototype: RenderedPrototype, max_edge: int = 320) -> str:
    """Uniformly scaled preview; the longer edge becomes ``max_edge``."""
    scale = max_edge / max(prototype.width, prototype.height)
    return svg_document_scaled(
        prototype.width * scale, prototype.height * scale,
        prototype.width, prototype.height, prototype.body,
    )


def svg_document_scaled(
    out_w: float, out_h: float, view_w: int, view_h: int, body: str
) -> str:
    from dashgen.renderer.svg import fmt

    return (
        el(
            "svg",
            {
                "height": out_h,
                "version": "1.1",
                "viewBox": f"0 0 {fmt(view_w)} {fmt(view_h)}",
                "width": out_w,
                "xmlns": "http://www.w3.org/2000/svg",
            },
            body,
        )
        + "\n"
    )
