"""Conversational pipeline orchestration.

One user input becomes a task batch (intent extraction), the batch becomes a
DAG and a wave schedule, agents execute the waves concurrently, and the
results reduce onto the session's current spec in a fixed order: view
content first, then layout, then style, then content patches. The evaluator
gates the result; a failing verdict triggers a bounded re-plan with the
violations appended to the provider prompt.

New views get placeholder ids during concurrent execution and their final
``v<n>`` ids during the (deterministic, single-threaded) reduction, so two
content tasks in one wave can never collide.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field, replace
from typing import Any, Iterable, Mapping

from dashgen.assembly import build_layout_tree, load_template
from dashgen.composition import (
    SimulationProfile,
    compose_views,
    decompose,
    simulate_data,
    map_encodings,
)
from dashgen.composition.display import DisplayTask
from dashgen.dsl import (
    DashboardSpec,
    InvariantViolation,
    SpecPatch,
    SpecValidationError,
    StyleSpec,
    ViewSpec,
    apply_patch,
    validate_spec,
)
from dashgen.dsl.model import SCHEMA_VERSION, AnalysisTask, Channel, ChartType, FieldKind
from dashgen.errors import DashgenError
from dashgen.evaluator import Verdict, evaluate_spec
from dashgen.executor import AgentMemory, AgentFn, TaskResult, execute_plan
from dashgen.knowledge import KnowledgeStore
from dashgen.planner import (
    IntentRequest,
    Task,
    TaskGraph,
    TaskKind,
    classify_dependencies,
    expand_batch,
    extract_intent,
    schedule_waves,
)
from dashgen.provider import ProviderHandle
from dashgen.renderer import RenderedPrototype, render_dashboard
from dashgen.stylization import (
    EmbellishmentKind,
    Palette,
    PaletteKind,
    default_preset,
    extract_theme_color,
    generate_embellishment,
    palette_presets,
    recommend_palette,
    required_palette_kind,
)

MAX_EVAL_ITERATIONS = 2

_DOMAIN_GLYPHS = {
    "retail": "grid",
    "health": "pulse",
    "police": "alert",
    "transport": "truck",
    "energy": "gauge",
    "finance": "pulse",
    "manufacturing": "factory",
    "agriculture": "leaf",
}

_TITLE_PREFIXES = (
    "generate a prototype of",
    "generate a prototype for",
    "generate",
    "create",
    "build",
    "make",
    "show",
)


class PipelineFailed(DashgenError):
    """Evaluation still failing after the iteration budget (or a task died)."""

    def __init__(self, verdict: Verdict):
        super().__init__(
            "pipeline failed: "
            + "; ".join(f"{rule}: {msg}" for rule, _, msg in verdict.violations)
        )
        self.verdict = verdict


class NoCurrentSpec(DashgenError):
    """Quick action needs an existing prototype in the session."""


class UnknownTemplate(DashgenError):
    pass


@dataclass
class PipelineConfig:
    provider: ProviderHandle
    knowledge: KnowledgeStore
    screen: tuple[int, int] = (1920, 1080)
    base_seed: int = 42
    retrieval_k: int = 3


@dataclass
class PipelineResult:
    spec: DashboardSpec
    prototype: RenderedPrototype | None
    verdict: Verdict
    task_results: dict[str, TaskResult]
    summary: str
    diagnostics: list[str] = field(default_factory=list)


def derive_seed(base_seed: int, *parts: str) -> int:
    key = "|".join([str(base_seed), *parts]).encode("utf-8")
    return int.from_bytes(hashlib.blake2b(key, digest_size=8).digest(), "big")


def derive_title(utterance: str) -> str:
    text = utterance.strip().rstrip(".")
    lowered = text.lower()
    for prefix in _TITLE_PREFIXES:
        if lowered.startswith(prefix):
            text = text[len(prefix) :].strip()
            break
    text = text.split(",")[0].strip() or "Dashboard Prototype"
    text = text[0].upper() + text[1:]
    return text[:64]


# --- reduction ---------------------------------------------------------------


def _next_view_counter(views: Iterable[ViewSpec]) -> int:
    best = 0
    for view in views:
        match = re.fullmatch(r"v(\d+)", view.id)
        if match:
            best = max(best, int(match.group(1)))
    return best + 1


def _apply_view_edit(view: ViewSpec, edit: dict[str, Any]) -> ViewSpec:
    if "title" in edit:
        view = replace(view, title=str(edit["title"]))
    if "chart_type" in edit:
        new_type = ChartType(edit["chart_type"])
        charts = (replace(view.charts[0], chart_type=new_type),) + view.charts[1:]
        view = replace(view, charts=charts)
    return view


def _reduce_views(
    current: tuple[ViewSpec, ...],
    ordered_tasks: list[Task],
    results: Mapping[str, TaskResult],
) -> tuple[ViewSpec, ...]:
    """Fold content-task results onto the current view list.

    Deterministic given task order; placeholder ids from CreateViews results
    are renamed to the next free ``v<n>`` here.
    """
    views = list(current)
    counter = _next_view_counter(views)
    for task in ordered_tasks:
        result = results.get(task.id)
        if result is None or not result.succeeded:
            continue
        if task.kind is TaskKind.CREATE_VIEWS:
            for view in result.payload:
                views.append(replace(view, id=f"v{counter}"))
                counter += 1
        elif task.kind is TaskKind.MODIFY_VIEW:
            edit = result.payload
            views = [
                _apply_view_edit(v, edit) if v.id == edit["view_id"] else v
                for v in views
            ]
        elif task.kind is TaskKind.SIMULATE_DATA:
            replacements: dict[str, ViewSpec] = result.payload
            views = [replacements.get(v.id, v) for v in views]
    return tuple(views)


def _color_encoded_kinds(views: Iterable[ViewSpec]) -> set[str]:
    kinds: set[str] = set()
    for view in views:
        for chart in view.charts:
            field_kinds = {f.name: f.kind for f in chart.dataset.fields}
            for channel, fname in chart.encoding:
                if channel is Channel.COLOR and fname in field_kinds:
                    kinds.add(field_kinds[fname].value)
    return kinds


def _style_from_palette(palette: Palette, domain: str, seed: int) -> StyleSpec:
    theme = extract_theme_color(palette)
    glyph = _DOMAIN_GLYPHS.get(domain, "gauge")
    border, _ = generate_embellishment(EmbellishmentKind.BORDER, theme, seed)
    divider, _ = generate_embellishment(EmbellishmentKind.DIVIDER, theme, seed)
    icon, _ = generate_embellishment(
        EmbellishmentKind.ICON, theme, seed, glyph_id=glyph
    )
    return StyleSpec(
        theme_color=theme, palette=palette, embellishments=(border, divider, icon)
    )


def _assemble_spec(
    current: DashboardSpec | None,
    ordered_tasks: list[Task],
    results: Mapping[str, TaskResult],
    config: PipelineConfig,
    title: str,
    domain: str,
    seed: int,
) -> DashboardSpec:
    views = _reduce_views(
        current.views if current else (), ordered_tasks, results
    )
    if not views:
        raise InvariantViolation("batch produced no views and none exist")

    layout = None
    style = None
    for task in ordered_tasks:
        result = results.get(task.id)
        if result is None or not result.succeeded:
            continue
        if task.kind in (TaskKind.ARRANGE_LAYOUT, TaskKind.MODIFY_LAYOUT):
            layout = result.payload
        elif task.kind in (TaskKind.STYLIZE, TaskKind.MODIFY_STYLE):
            style = result.payload

    if layout is None and current is not None:
        layout = current.layout
    view_ids = {v.id for v in views}
    if layout is None or set(layout.leaf_view_ids()) != view_ids:
        layout = build_layout_tree(list(views), config.screen)

    if style is None:
        if current is not None:
            style = current.style
        else:
            kind = required_palette_kind(_color_encoded_kinds(views))
            style = _style_from_palette(default_preset(kind), domain, seed)

    spec = DashboardSpec(
        schema_version=SCHEMA_VERSION,
        title=title,
        domain=domain,
        style=style,
        views=views,
        layout=layout,
    )
    for task in ordered_tasks:
        result = results.get(task.id)
        if result is None or not result.succeeded:
            continue
        if task.kind is TaskKind.MODIFY_CONTENT:
            spec = apply_patch(spec, SpecPatch.from_payload(result.payload))
    validate_spec(spec)
    return spec


# --- agents ------------------------------------------------------------------


def _build_registry(
    config: PipelineConfig,
    current: DashboardSpec | None,
    graph_tasks: list[Task],
    profile: SimulationProfile,
    context_docs: tuple[str, ...],
    title: str,
    domain: str,
    seed: int,
) -> dict[TaskKind, AgentFn]:
    current_views: tuple[ViewSpec, ...] = current.views if current else ()

    def ordered_dep_tasks(deps: Mapping[str, TaskResult]) -> list[Task]:
        return [t for t in graph_tasks if t.id in deps]

    def create_views(task: Task, deps: Mapping[str, TaskResult]) -> Any:
        diagnostics: list[str] = []
        display_tasks = decompose(
            task.payload, config.provider, context_docs, diagnostics
        )
        views = compose_views(display_tasks, profile, diagnostics=diagnostics)
        # Placeholder ids; final v<n> ids are assigned at reduction time.
        return [
            replace(view, id=f"pending-{task.id}-{i}")
            for i, view in enumerate(views)
        ]

    def modify_view(task: Task, deps: Mapping[str, TaskResult]) -> Any:
        view_id = task.payload["view_id"]
        if all(v.id != view_id for v in current_views):
            raise InvariantViolation(f"no view {view_id!r} to modify")
        return dict(task.payload)

    def simulate(task: Task, deps: Mapping[str, TaskResult]) -> Any:
        targets = task.payload.get("view_ids") or [v.id for v in current_views]
        out: dict[str, ViewSpec] = {}
        for view in current_views:
            if view.id not in targets:
                continue
            charts = []
            for chart in view.charts:
                display = DisplayTask(
                    title=view.title,
                    analysis_task=view.analysis_task,
                    field_requirements=chart.dataset.fields,
                    requested_chart=chart.chart_type,
                )
                dataset = simulate_data(display, chart.chart_type, profile)
                charts.append(map_encodings(display, chart.chart_type, dataset))
            out[view.id] = replace(view, charts=tuple(charts))
        return out

    def arrange_layout(task: Task, deps: Mapping[str, TaskResult]) -> Any:
        views = _reduce_views(current_views, ordered_dep_tasks(deps), deps)
        return build_layout_tree(list(views), config.screen)

    def modify_layout(task: Task, deps: Mapping[str, TaskResult]) -> Any:
        template = load_template(task.payload["template_id"])
        views = _reduce_views(current_views, ordered_dep_tasks(deps), deps)
        return build_layout_tree(list(views), config.screen, template=template)

    def stylize(task: Task, deps: Mapping[str, TaskResult]) -> Any:
        views = _reduce_views(current_views, ordered_dep_tasks(deps), deps)
        palette = recommend_palette(
            domain,
            task.payload.get("theme_hint", ""),
            _color_encoded_kinds(views),
            config.provider,
            context_docs,
        )
        return _style_from_palette(palette, domain, seed)

    def modify_style(task: Task, deps: Mapping[str, TaskResult]) -> Any:
        required = required_palette_kind(_color_encoded_kinds(current_views))
        name = task.payload.get("palette", "")
        presets = palette_presets()
        if name in presets and presets[name].kind is required:
            palette = presets[name]
        else:
            palette = recommend_palette(
                domain,
                task.payload.get("theme_hint", name),
                _color_encoded_kinds(current_views),
                config.provider,
                context_docs,
            )
        return _style_from_palette(palette, domain, seed)

    def modify_content(task: Task, deps: Mapping[str, TaskResult]) -> Any:
        patch = SpecPatch.from_payload(task.payload["patch"])
        return patch.to_payload()

    def evaluate_task(task: Task, deps: Mapping[str, TaskResult]) -> Verdict:
        others = [t for t in graph_tasks if t.id != task.id]
        try:
            spec = _assemble_spec(
                current, others, deps, config, title, domain, seed
            )
        except (InvariantViolation, SpecValidationError) as exc:
            return Verdict(
                passed=False, violations=(("assembly", "spec", str(exc)),)
            )
        return evaluate_spec(spec)

    return {
        TaskKind.CREATE_VIEWS: create_views,
        TaskKind.MODIFY_VIEW: modify_view,
        TaskKind.SIMULATE_DATA: simulate,
        TaskKind.ARRANGE_LAYOUT: arrange_layout,
        TaskKind.MODIFY_LAYOUT: modify_layout,
        TaskKind.STYLIZE: stylize,
        TaskKind.MODIFY_STYLE: modify_style,
        TaskKind.MODIFY_CONTENT: modify_content,
        TaskKind.EVALUATE: evaluate_task,
    }


# --- entry points -------------------------------------------------------------


def _summarize(
    tasks: list[Task], before: int, after: int, utterance: str | None
) -> str:
    kinds = {t.kind for t in tasks}
    parts: list[str] = []
    if after > before:
        parts.append(f"added {after - before} view{'s' if after - before != 1 else ''}")
    elif TaskKind.CREATE_VIEWS in kinds:
        parts.append("regenerated views")
    if TaskKind.MODIFY_VIEW in kinds:
        parts.append("modified a view")
    if TaskKind.MODIFY_CONTENT in kinds:
        parts.append("edited content")
    if TaskKind.SIMULATE_DATA in kinds:
        parts.append("resimulated data")
    if TaskKind.MODIFY_LAYOUT in kinds:
        template = next(
            t.payload.get("template_id", "")
            for t in tasks
            if t.kind is TaskKind.MODIFY_LAYOUT
        )
        parts.append(f"applied layout {template}")
    elif TaskKind.ARRANGE_LAYOUT in kinds:
        parts.append("arranged layout")
    if TaskKind.MODIFY_STYLE in kinds:
        parts.append("changed style")
    elif TaskKind.STYLIZE in kinds:
        parts.append("styled prototype")
    summary = ", ".join(parts) if parts else "no changes"
    if utterance:
        summary = f"{summary} (from: {utterance[:48]})"
    return summary


def _run_batch(
    config: PipelineConfig,
    tasks: list[Task],
    current: DashboardSpec | None,
    context_docs: tuple[str, ...],
    title: str,
    domain: str,
    seed: int,
    utterance: str | None,
) -> PipelineResult:
    graph = classify_dependencies(tasks)
    plan = schedule_waves(graph)
    profile = SimulationProfile(seed=seed, domain=domain)
    ordered = list(graph.tasks.values())
    registry = _build_registry(
        config, current, ordered, profile, context_docs, title, domain, seed
    )
    results = execute_plan(plan, graph, registry, AgentMemory())

    failed = [r for r in results.values() if not r.succeeded]
    if failed:
        violations = tuple(
            (f"task-{r.task_id}", "pipeline", "; ".join(r.diagnostics))
            for r in sorted(failed, key=lambda r: r.task_id)
        )
        raise PipelineFailed(Verdict(passed=False, violations=violations))

    evaluate_results = [
        results[t.id] for t in ordered if t.kind is TaskKind.EVALUATE
    ]
    spec = _assemble_spec(current, ordered, results, config, title, domain, seed)
    verdict = (
        evaluate_results[-1].payload if evaluate_results else evaluate_spec(spec)
    )
    prototype = render_dashboard(spec) if verdict.passed else None
    before = len(current.views) if current else 0
    return PipelineResult(
        spec=spec,
        prototype=prototype,
        verdict=verdict,
        task_results=results,
        summary=_summarize(tasks, before, len(spec.views), utterance),
    )


def run_message(
    config: PipelineConfig,
    utterance: str,
    current: DashboardSpec | None,
    context: tuple[tuple[str, str], ...] = (),
    seed_parts: tuple[str, ...] = (),
) -> PipelineResult:
    """Full conversational turn with the bounded evaluation-retry loop."""
    context_docs = config.knowledge.context_texts(
        utterance, config.retrieval_k
    )
    title = current.title if current else derive_title(utterance)
    domain = current.domain if current else infer_domain_for(utterance)
    attempt_text = utterance
    verdict: Verdict | None = None
    for iteration in range(1 + MAX_EVAL_ITERATIONS):
        seed = derive_seed(config.base_seed, *seed_parts, str(iteration))
        request = IntentRequest(
            utterance=attempt_text, conversation_context=context
        )
        tasks = extract_intent(request, config.provider, context_docs)
        tasks = expand_batch(
            tasks, have_spec=current is not None, have_style=current is not None
        )
        result = _run_batch(
            config, tasks, current, context_docs, title, domain, seed, utterance
        )
        if result.verdict.passed:
            return result
        verdict = result.verdict
        attempt_text = (
            utterance
            + "\n\nThe previous attempt failed evaluation: "
            + "; ".join(f"{rule}: {msg}" for rule, _, msg in verdict.violations)
        )
    raise PipelineFailed(verdict)


def run_quick_action(
    config: PipelineConfig,
    action: str,
    params: dict[str, Any],
    current: DashboardSpec | None,
    seed_parts: tuple[str, ...] = (),
) -> PipelineResult:
    """Targeted task execution bypassing intent extraction."""
    if current is None:
        raise NoCurrentSpec("session has no prototype yet")
    if action == "ModifyLayout":
        template_id = params.get("template_id", "")
        try:
            load_template(template_id)
        except KeyError as exc:
            raise UnknownTemplate(str(exc)) from exc
        task = Task(
            id="t01",
            kind=TaskKind.MODIFY_LAYOUT,
            payload={"template_id": template_id},
        )
    elif action == "ModifyStyle":
        task = Task(
            id="t01",
            kind=TaskKind.MODIFY_STYLE,
            payload={"palette": params.get("palette", "")},
        )
    elif action == "ModifyContent":
        task = Task(
            id="t01",
            kind=TaskKind.MODIFY_CONTENT,
            payload={"patch": params.get("patch", {})},
        )
    else:
        raise DashgenError(f"unknown quick action {action!r}")

    tasks = expand_batch([task], have_spec=True, have_style=True)
    seed = derive_seed(config.base_seed, *seed_parts)
    result = _run_batch(
        config,
        tasks,
        current,
        (),
        current.title,
        current.domain,
        seed,
        None,
    )
    if not result.verdict.passed:
        raise PipelineFailed(result.verdict)
    return result


def infer_domain_for(utterance: str) -> str:
    from dashgen.composition import infer_domain

    return infer_domain(utterance)
