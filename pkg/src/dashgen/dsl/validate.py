"""Semantic validation of dashboard documents.

The machine-readable schema (``data/dashboard-spec.schema.json``) guards
structure: key presence, value types, enum membership. The rules here guard
meaning, each with a stable rule id so tests and API consumers can assert on
the exact violation:

    duplicate-view-id      view ids unique within the spec
    empty-views            at least one view
    importance-positive    view importance strictly positive
    empty-charts           every view carries at least one chart
    unknown-encoded-field  encoded field names exist in the chart's dataset
    row-arity              every row has the same arity as the field list
    measure-finite         measure cells are finite numbers
    temporal-iso           temporal cells are ISO-8601 date strings
    theme-color-range      theme color components within [0, 255]
    dangling-view-ref      every layout leaf points at an existing view
    reused-view-ref        no view is placed in more than one leaf
    unplaced-view          every view appears in some leaf
"""

from __future__ import annotations

import math
from datetime import date, datetime

from dashgen.dsl.errors import SpecValidationError
from dashgen.dsl.model import DashboardSpec, FieldKind, LayoutNode


def _is_iso_date(value: object) -> bool:
    if not isinstance(value, str):
        return False
    for parser in (date.fromisoformat, datetime.fromisoformat):
        try:
            parser(value)
            return True
        except ValueError:
            continue
    return False


def _is_finite_number(value: object) -> bool:
    return (
        isinstance(value, (int, float))
        and not isinstance(value, bool)
        and math.isfinite(value)
    )


def _leaf_paths(node: LayoutNode, prefix: str) -> list[tuple[str, str]]:
    if node.is_leaf():
        return [(node.view_id or "", prefix)]
    out: list[tuple[str, str]] = []
    for i, child in enumerate(node.children):
        out.extend(_leaf_paths(child, f"{prefix}.children.{i}"))
    return out


def validate_spec(spec: DashboardSpec) -> None:
    """Raise :class:`SpecValidationError` on the first violated rule."""
    if not spec.views:
        raise SpecValidationError("empty-views", "views", "views list is empty")

    seen: set[str] = set()
    for i, view in enumerate(spec.views):
        if view.id in seen:
            raise SpecValidationError(
                "duplicate-view-id", f"views.{i}.id", f"view id {view.id!r} repeats"
            )
        seen.add(view.id)

    for i, view in enumerate(spec.views):
        vp = f"views.{i}"
        if not (view.importance > 0):
            raise SpecValidationError(
                "importance-positive",
                f"{vp}.importance",
                f"importance must be > 0, got {view.importance}",
            )
        if not view.charts:
            raise SpecValidationError(
                "empty-charts", f"{vp}.charts", "view has no charts"
            )
        for j, chart in enumerate(view.charts):
            cp = f"{vp}.charts.{j}"
            names = set(chart.dataset.field_names())
            for channel, fname in chart.encoding:
                if fname not in names:
                    raise SpecValidationError(
                        "unknown-encoded-field",
                        f"{cp}.encoding.{channel.value}",
                        f"encoded field {fname!r} not in dataset fields",
                    )
            arity = len(chart.dataset.fields)
            for r, row in enumerate(chart.dataset.rows):
                if len(row) != arity:
                    raise SpecValidationError(
                        "row-arity",
                        f"{cp}.dataset.rows.{r}",
                        f"row has {len(row)} cells, expected {arity}",
                    )
                for c, (cell, fld) in enumerate(zip(row, chart.dataset.fields)):
                    cell_path = f"{cp}.dataset.rows.{r}.{c}"
                    if fld.kind is FieldKind.MEASURE and not _is_finite_number(cell):
                        raise SpecValidationError(
                            "measure-finite",
                            cell_path,
                            f"measure cell {cell!r} is not a finite number",
                        )
                    if fld.kind is FieldKind.TEMPORAL and not _is_iso_date(cell):
                        raise SpecValidationError(
                            "temporal-iso",
                            cell_path,
                            f"temporal cell {cell!r} is not an ISO-8601 date",
                        )

    for c, component in enumerate(spec.style.theme_color):
        if not 0 <= component <= 255:
            raise SpecValidationError(
                "theme-color-range",
                f"style.theme_color.{c}",
                f"component {component} outside [0, 255]",
            )

    view_ids = {v.id for v in spec.views}
    placed: dict[str, str] = {}
    for vid, path in _leaf_paths(spec.layout.root, "layout.root"):
        if vid not in view_ids:
            raise SpecValidationError(
                "dangling-view-ref", path, f"leaf references unknown view {vid!r}"
            )
        if vid in placed:
            raise SpecValidationError(
                "reused-view-ref",
                path,
                f"view {vid!r} already placed at {placed[vid]}",
            )
        placed[vid] = path
    for vid in (v.id for v in spec.views):
        if vid not in placed:
            raise SpecValidationError(
                "unplaced-view", "layout.root", f"view {vid!r} appears in no leaf"
            )
