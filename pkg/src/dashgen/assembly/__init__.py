"""Assembly: overlap model, layout tree generation, small multiples."""

import json
from functools import lru_cache
from importlib import resources

from dashgen.assembly.grid import (
    EmptyNode,
    OutOfBounds,
    OverlapProfile,
    Rect,
    ReferenceGrid,
    centroid_spread,
    compute_importance,
    compute_overlap_profile,
)
from dashgen.assembly.multiples import (
    ArrangementDescriptor,
    RuleViolation,
    Slot,
    compose_small_multiple,
    slot_rects,
)
from dashgen.assembly.tree import (
    MAX_LEVEL1,
    MAX_VIEWS,
    WIDE_ASPECT,
    LayoutTemplate,
    TooManyViews,
    build_layout_tree,
    choose_orientation,
    realize_rects,
)

TEMPLATE_IDS = ("template_1", "template_2", "template_3", "template_4")


@lru_cache(maxsize=None)
def load_template(template_id: str) -> LayoutTemplate:
    """Load one of the predefined layout templates by id."""
    if template_id not in TEMPLATE_IDS:
        raise KeyError(f"unknown layout template {template_id!r}")
    raw = json.loads(
        resources.files("dashgen")
        .joinpath(f"data/templates/{template_id}.dash.json")
        .read_text(encoding="utf-8")
    )
    return LayoutTemplate.from_payload(raw)


__all__ = [
    "MAX_LEVEL1",
    "MAX_VIEWS",
    "TEMPLATE_IDS",
    "WIDE_ASPECT",
    "ArrangementDescriptor",
    "EmptyNode",
    "LayoutTemplate",
    "OutOfBounds",
    "OverlapProfile",
    "Rect",
    "ReferenceGrid",
    "RuleViolation",
    "Slot",
    "TooManyViews",
    "build_layout_tree",
    "centroid_spread",
    "choose_orientation",
    "compose_small_multiple",
    "compute_importance",
    "compute_overlap_profile",
    "load_template",
    "realize_rects",
    "slot_rects",
]
