"""Requirement decomposition and full view composition.

``decompose`` turns a planner CreateViews payload into validated display
tasks. Entries that already carry structured fields map directly; entries
with only a free-text description go through the provider (with one
corrective retry). ``compose_views`` then runs the whole chain per task:
chart selection, data simulation, encoding, and small-multiple splitting.
"""

from __future__ import annotations

import json
import logging
from typing import Any

from dashgen.composition.charts import select_chart_type
from dashgen.composition.display import (
    MAX_DISPLAY_TASKS,
    DisplayTask,
    SimulationProfile,
)
from dashgen.composition.encode import map_encodings
from dashgen.composition.simulate import simulate_data
from dashgen.dsl.model import (
    AnalysisTask,
    ChartSpec,
    ChartType,
    DatasetField,
    FieldKind,
    ViewSpec,
)
from dashgen.errors import UnparsableIntent
from dashgen.provider import ProviderHandle

logger = logging.getLogger(__name__)

#: Charts that need extra room; their views weigh more at layout time.
_SPACE_HUNGRY = {ChartType.MAP, ChartType.MATRIX, ChartType.TABLE}

_MAX_CHARTS_PER_VIEW = 4

_EXPAND_SYSTEM_PROMPT = (
    "You expand one dashboard display requirement into JSON: "
    '{"title": str, "analysis_task": one of Comparison/Highlight/Overview/'
    'Decomposition, "fields": [{"name": str, "kind": dimension|measure|'
    'temporal, "unit": optional str}], "emphasis": optional bool}.'
)


def _fields_from_payload(raw: list[dict]) -> list[DatasetField]:
    fields = []
    for f in raw:
        fields.append(
            DatasetField(
                name=f["name"], kind=FieldKind(f["kind"]), unit=f.get("unit")
            )
        )
    return fields


def _normalize_fields(
    fields: list[DatasetField], title: str, diagnostics: list[str]
) -> list[DatasetField]:
    """Demote surplus temporal fields to dimensions (one temporal axis max)."""
    seen_temporal = False
    out = []
    for f in fields:
        if f.kind is FieldKind.TEMPORAL:
            if seen_temporal:
                diagnostics.append(
                    f"view {title!r}: extra temporal field {f.name!r} "
                    "demoted to dimension"
                )
                f = DatasetField(name=f.name, kind=FieldKind.DIMENSION, unit=f.unit)
            seen_temporal = True
        out.append(f)
    return out


def _display_task_from_entry(
    entry: dict[str, Any], diagnostics: list[str]
) -> DisplayTask:
    fields = _fields_from_payload(entry["fields"])
    fields = _normalize_fields(fields, entry["title"], diagnostics)
    requested = entry.get("chart_type")
    return DisplayTask(
        title=entry["title"],
        analysis_task=AnalysisTask(entry.get("analysis_task", "Overview")),
        field_requirements=tuple(fields),
        emphasis=bool(entry.get("emphasis", False)),
        requested_chart=ChartType(requested) if requested else None,
    )


def _expand_via_provider(
    entry: dict[str, Any],
    provider: ProviderHandle,
    context_docs: tuple[str, ...],
    diagnostics: list[str],
) -> DisplayTask:
    prompt = (
        f"Requirement title: {entry['title']}. "
        f"Details: {entry.get('description', 'none')}."
    )

    def attempt(text: str) -> DisplayTask:
        data = json.loads(text)
        merged = {
            "title": data.get("title", entry["title"]),
            "analysis_task": data.get("analysis_task", "Overview"),
            "fields": data["fields"],
            "emphasis": data.get("emphasis", entry.get("emphasis", False)),
            "chart_type": entry.get("chart_type"),
        }
        return _display_task_from_entry(merged, diagnostics)

    raw = provider.complete(_EXPAND_SYSTEM_PROMPT, prompt, context_docs)
    try:
        return attempt(raw)
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as first:
        retry = (
            f"{prompt}\nYour previous response failed validation: {first}. "
            "Return corrected JSON only."
        )
        raw = provider.complete(_EXPAND_SYSTEM_PROMPT, retry, context_docs)
        try:
            return attempt(raw)
        except (KeyError, TypeError, ValueError, json.JSONDecodeError) as second:
            raise UnparsableIntent(
                f"cannot expand requirement {entry['title']!r}: {second}"
            ) from second


def decompose(
    payload: dict[str, Any],
    provider: ProviderHandle,
    context_docs: tuple[str, ...] = (),
    diagnostics: list[str] | None = None,
) -> list[DisplayTask]:
    """Convert a CreateViews payload into at most 12 display tasks."""
    diagnostics = diagnostics if diagnostics is not None else []
    entries = list(payload.get("views", []))
    if len(entries) > MAX_DISPLAY_TASKS:
        diagnostics.append(
            f"truncated {len(entries)} requested views to {MAX_DISPLAY_TASKS}"
        )
        logger.info(diagnostics[-1])
        entries = entries[:MAX_DISPLAY_TASKS]
    tasks = []
    for entry in entries:
        if entry.get("fields"):
            tasks.append(_display_task_from_entry(entry, diagnostics))
        else:
            tasks.append(
                _expand_via_provider(entry, provider, context_docs, diagnostics)
            )
    return tasks


def _charts_for_task(
    task: DisplayTask, profile: SimulationProfile, diagnostics: list[str]
) -> list[ChartSpec]:
    """One chart per task, or a small-multiple split when the task calls
    for it (multi-measure comparison/decomposition, highlight with trend)."""
    chart_type = select_chart_type(task, diagnostics)
    measures = task.measures()

    def single(t: DisplayTask, ct: ChartType) -> ChartSpec:
        return map_encodings(t, ct, simulate_data(t, ct, profile))

    if task.requested_chart is not None or len(measures) <= 1:
        if (
            task.analysis_task is AnalysisTask.HIGHLIGHT
            and task.requested_chart is None
            and task.temporal() is not None
            and measures
        ):
            # Headline number plus its recent trend as context.
            headline = DisplayTask(
                title=task.title,
                analysis_task=task.analysis_task,
                field_requirements=tuple(measures[:1]),
                emphasis=task.emphasis,
            )
            return [single(headline, ChartType.TEXT), single(task, ChartType.LINE)]
        return [single(task, chart_type)]

    shared = [f for f in task.field_requirements if f.kind is not FieldKind.MEASURE]
    per_measure = [
        DisplayTask(
            title=task.title,
            analysis_task=task.analysis_task,
            field_requirements=tuple(shared + [m]),
            emphasis=task.emphasis,
        )
        for m in measures[:_MAX_CHARTS_PER_VIEW]
    ]
    if len(measures) > _MAX_CHARTS_PER_VIEW:
        diagnostics.append(
            f"view {task.title!r}: kept {_MAX_CHARTS_PER_VIEW} of "
            f"{len(measures)} measures"
        )

    if task.analysis_task is AnalysisTask.COMPARISON:
        # Identical chart types, one measure per slot.
        slot_type = select_chart_type(per_measure[0], diagnostics)
        return [single(t, slot_type) for t in per_measure]
    if task.analysis_task is AnalysisTask.DECOMPOSITION:
        primary_type = select_chart_type(per_measure[0], diagnostics)
        detail_type = ChartType.BAR if primary_type is not ChartType.BAR else (
            ChartType.LINE if task.temporal() is not None else ChartType.TABLE
        )
        charts = [single(per_measure[0], primary_type)]
        charts += [single(t, detail_type) for t in per_measure[1:]]
        return charts
    # Highlight/Overview with several measures: feature the first.
    return [single(task, chart_type)]


def view_importance(task: DisplayTask, charts: list[ChartSpec]) -> float:
    weight = 1.0
    if task.emphasis:
        weight += 1.0
    if any(c.chart_type in _SPACE_HUNGRY for c in charts):
        weight += 0.5
    return weight


def compose_views(
    tasks: list[DisplayTask],
    profile: SimulationProfile,
    id_start: int = 1,
    diagnostics: list[str] | None = None,
) -> list[ViewSpec]:
    """Build full view specs (charts, data, encodings) from display tasks."""
    diagnostics = diagnostics if diagnostics is not None else []
    views = []
    for offset, task in enumerate(tasks):
        charts = _charts_for_task(task, profile, diagnostics)
        views.append(
            ViewSpec(
                id=f"v{id_start + offset}",
                title=task.title,
                analysis_task=task.analysis_task,
                importance=view_importance(task, charts),
                charts=tuple(charts),
            )
        )
    return views
