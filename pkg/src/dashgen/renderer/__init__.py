"""Deterministic SVG rendering of dashboard prototypes."""

from dashgen.renderer.charts import (
    DEFAULT_MIN_SLOT,
    MIN_SLOT,
    SlotTooSmall,
    map_regions,
    render_chart,
)
from dashgen.renderer.dashboard import (
    BANNER_HEIGHT,
    RenderedPrototype,
    render_dashboard,
    render_thumbnail,
)
from dashgen.renderer.svg import el, fmt, svg_document, text_el

__all__ = [
    "BANNER_HEIGHT",
    "DEFAULT_MIN_SLOT",
    "MIN_SLOT",
    "RenderedPrototype",
    "SlotTooSmall",
    "el",
    "fmt",
    "map_regions",
    "render_chart",
    "render_dashboard",
    "render_thumbnail",
    "svg_document",
    "text_el",
]
