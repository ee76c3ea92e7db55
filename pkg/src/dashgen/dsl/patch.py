"""Targeted edits to a dashboard spec.

A patch touches exactly one addressed subtree; every other view serializes
bit-identically before and after. AddView and DeleteView also adjust the
layout tree (a view must occupy exactly one leaf), keeping the result valid.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Any

from dashgen.dsl.errors import InvariantViolation, SpecValidationError, TargetNotFound
from dashgen.dsl.model import (
    ChartSpec,
    ChartType,
    DashboardSpec,
    LayoutNode,
    LayoutTree,
    Orientation,
    StyleSpec,
    ViewSpec,
)
from dashgen.dsl.validate import validate_spec


class PatchOp(str, Enum):
    ADD_VIEW = "AddView"
    DELETE_VIEW = "DeleteView"
    REPLACE_CHART_TYPE = "ReplaceChartType"
    EDIT_TITLE = "EditTitle"
    EDIT_DATASET_FIELD = "EditDatasetField"
    REPLACE_LAYOUT = "ReplaceLayout"
    REPLACE_STYLE = "ReplaceStyle"


@dataclass(frozen=True)
class SpecPatch:
    """One edit operation addressed at a view (or chart within a view).

    ``target`` is a dotted path: a view id (``"v2"``), optionally extended
    with a chart index (``"v2.charts.1"``). Whole-spec operations
    (ReplaceLayout, ReplaceStyle) use an empty target.
    """

    operation: PatchOp
    target: str
    payload: Any = None

    def to_payload(self) -> dict[str, Any]:
        return {
            "operation": self.operation.value,
            "target": self.target,
            "payload": self.payload,
        }

    @classmethod
    def from_payload(cls, d: dict[str, Any]) -> SpecPatch:
        return cls(
            operation=PatchOp(d["operation"]),
            target=d.get("target", ""),
            payload=d.get("payload"),
        )


def _resolve(spec: DashboardSpec, target: str) -> tuple[int, int]:
    """Return (view index, chart index) for a target path."""
    parts = target.split(".") if target else []
    if not parts:
        raise TargetNotFound("patch target is empty")
    view_idx = next((i for i, v in enumerate(spec.views) if v.id == parts[0]), None)
    if view_idx is None:
        raise TargetNotFound(f"no view with id {parts[0]!r}")
    chart_idx = 0
    if len(parts) > 1:
        if len(parts) != 3 or parts[1] != "charts" or not parts[2].isdigit():
            raise TargetNotFound(f"unintelligible target {target!r}")
        chart_idx = int(parts[2])
        if chart_idx >= len(spec.views[view_idx].charts):
            raise TargetNotFound(f"view {parts[0]!r} has no chart {chart_idx}")
    return view_idx, chart_idx


def _with_view(spec: DashboardSpec, idx: int, view: ViewSpec) -> DashboardSpec:
    views = spec.views[:idx] + (view,) + spec.views[idx + 1 :]
    return replace(spec, views=views)


def _with_chart(view: ViewSpec, idx: int, chart: ChartSpec) -> ViewSpec:
    charts = view.charts[:idx] + (chart,) + view.charts[idx + 1 :]
    return replace(view, charts=charts)


def _rescale(children: tuple[LayoutNode, ...], factor: float) -> tuple[LayoutNode, ...]:
    return tuple(replace(c, fraction=c.fraction * factor) for c in children)


def _layout_with_added_leaf(tree: LayoutTree, view_id: str) -> LayoutTree:
    root = tree.root
    if len(root.children) < 4:
        n = len(root.children)
        children = _rescale(root.children, n / (n + 1)) + (
            LayoutNode.leaf(view_id, 1 / (n + 1)),
        )
        return replace(tree, root=replace(root, children=children))
    last = root.children[-1]
    if last.is_leaf():
        group = LayoutNode.group(
            orientation=root.orientation.orthogonal(),
            children=(
                replace(last, fraction=0.5),
                LayoutNode.leaf(view_id, 0.5),
            ),
            fraction=last.fraction,
        )
        children = root.children[:-1] + (group,)
    else:
        m = len(last.children)
        grand = _rescale(last.children, m / (m + 1)) + (
            LayoutNode.leaf(view_id, 1 / (m + 1)),
        )
        children = root.children[:-1] + (replace(last, children=grand),)
    return replace(tree, root=replace(root, children=children))


def _layout_without_leaf(tree: LayoutTree, view_id: str) -> LayoutTree:
    def prune(node: LayoutNode) -> LayoutNode | None:
        if node.is_leaf():
            return None if node.view_id == view_id else node
        kept = [c for c in (prune(child) for child in node.children) if c is not None]
        if not kept:
            return None
        if len(kept) == 1:
            # Collapse a single-child group into its child at this slot.
            return replace(kept[0], fraction=node.fraction)
        remaining = sum(c.fraction for c in kept)
        kept = [replace(c, fraction=c.fraction / remaining) for c in kept]
        return replace(node, children=tuple(kept))

    root = prune(tree.root)
    if root is None:
        raise InvariantViolation("cannot delete the only placed view")
    if root.is_leaf():
        orientation = tree.root.orientation or Orientation.COLUMN
        root = LayoutNode.group(
            orientation=orientation, children=(replace(root, fraction=1.0),)
        )
    return replace(tree, root=root)


def apply_patch(spec: DashboardSpec, patch: SpecPatch) -> DashboardSpec:
    """Return a new spec with the edit applied; the input is never mutated."""
    op = patch.operation
    if op is PatchOp.ADD_VIEW:
        try:
            view = ViewSpec.from_payload(patch.payload)
        except (KeyError, TypeError, ValueError) as exc:
            raise InvariantViolation(f"malformed view payload: {exc}") from exc
        if any(v.id == view.id for v in spec.views):
            raise InvariantViolation(f"view id {view.id!r} already exists")
        result = replace(
            spec,
            views=spec.views + (view,),
            layout=_layout_with_added_leaf(spec.layout, view.id),
        )
    elif op is PatchOp.DELETE_VIEW:
        idx, _ = _resolve(spec, patch.target)
        if len(spec.views) == 1:
            raise InvariantViolation("views non-empty: cannot delete the only view")
        vid = spec.views[idx].id
        result = replace(
            spec,
            views=spec.views[:idx] + spec.views[idx + 1 :],
            layout=_layout_without_leaf(spec.layout, vid),
        )
    elif op is PatchOp.REPLACE_CHART_TYPE:
        vidx, cidx = _resolve(spec, patch.target)
        try:
            new_type = ChartType(patch.payload)
        except ValueError as exc:
            raise InvariantViolation(f"unknown chart type {patch.payload!r}") from exc
        view = spec.views[vidx]
        chart = replace(view.charts[cidx], chart_type=new_type)
        result = _with_view(spec, vidx, _with_chart(view, cidx, chart))
    elif op is PatchOp.EDIT_TITLE:
        vidx, _ = _resolve(spec, patch.target)
        result = _with_view(
            spec, vidx, replace(spec.views[vidx], title=str(patch.payload))
        )
    elif op is PatchOp.EDIT_DATASET_FIELD:
        vidx, cidx = _resolve(spec, patch.target)
        old = (patch.payload or {}).get("field")
        new = (patch.payload or {}).get("name")
        if not old or not new:
            raise InvariantViolation("payload needs 'field' and 'name'")
        view = spec.views[vidx]
        chart = view.charts[cidx]
        dataset = chart.dataset
        if old not in dataset.field_names():
            raise TargetNotFound(f"no dataset field {old!r} in {patch.target!r}")
        fields = tuple(
            replace(f, name=new) if f.name == old else f for f in dataset.fields
        )
        encoding = tuple(
            (ch, new if fname == old else fname) for ch, fname in chart.encoding
        )
        chart = replace(chart, dataset=replace(dataset, fields=fields), encoding=encoding)
        result = _with_view(spec, vidx, _with_chart(view, cidx, chart))
    elif op is PatchOp.REPLACE_LAYOUT:
        try:
            layout = LayoutTree.from_payload(patch.payload)
        except (KeyError, TypeError, ValueError) as exc:
            raise InvariantViolation(f"malformed layout payload: {exc}") from exc
        result = replace(spec, layout=layout)
    elif op is PatchOp.REPLACE_STYLE:
        try:
            style = StyleSpec.from_payload(patch.payload)
        except (KeyError, TypeError, ValueError) as exc:
            raise InvariantViolation(f"malformed style payload: {exc}") from exc
        result = replace(spec, style=style)
    else:  # pragma: no cover - enum is exhaustive
        raise InvariantViolation(f"unsupported operation {op}")

    try:
        validate_spec(result)
    except SpecValidationError as exc:
        raise InvariantViolation(str(exc)) from exc
    return result
