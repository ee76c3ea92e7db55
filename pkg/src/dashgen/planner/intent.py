"""Intent extraction: user input to typed tasks.

Free-text input goes through the provider and comes back as a JSON task
batch; every payload is validated against its kind's schema before anything
downstream sees it, with one corrective re-prompt on failure. Pre-defined
selections (quick actions) bypass the provider entirely.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

import jsonschema

from dashgen.errors import ProviderError, UnparsableIntent
from dashgen.planner.tasks import CONTENT_KINDS, Task, TaskKind
from dashgen.provider import ProviderHandle

_CHART_TYPES = [
    "Bar", "Line", "Point", "Area", "Pie", "Map", "Matrix",
    "Table", "Text", "Diagram", "Circle", "Glyph",
]
_ANALYSIS_TASKS = ["Comparison", "Highlight", "Overview", "Decomposition"]

_VIEW_REQUIREMENT_SCHEMA = {
    "type": "object",
    "required": ["title"],
    "additionalProperties": False,
    "properties": {
        "title": {"type": "string", "minLength": 1},
        "description": {"type": "string"},
        "analysis_task": {"enum": _ANALYSIS_TASKS},
        "fields": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "kind"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string", "minLength": 1},
                    "kind": {"enum": ["dimension", "measure", "temporal"]},
                    "unit": {"type": "string"},
                },
            },
        },
        "chart_type": {"enum": _CHART_TYPES},
        "emphasis": {"type": "boolean"},
    },
}

#: Schema for each task kind's payload; provider output must conform.
PAYLOAD_SCHEMAS: dict[TaskKind, dict[str, Any]] = {
    TaskKind.CREATE_VIEWS: {
        "type": "object",
        "required": ["views"],
        "additionalProperties": False,
        "properties": {
            "views": {"type": "array", "minItems": 1, "items": _VIEW_REQUIREMENT_SCHEMA}
        },
    },
    TaskKind.MODIFY_VIEW: {
        "type": "object",
        "required": ["view_id"],
        "additionalProperties": False,
        "properties": {
            "view_id": {"type": "string"},
            "title": {"type": "string"},
            "chart_type": {"enum": _CHART_TYPES},
        },
    },
    TaskKind.MODIFY_LAYOUT: {
        "type": "object",
        "required": ["template_id"],
        "additionalProperties": False,
        "properties": {"template_id": {"type": "string"}},
    },
    TaskKind.MODIFY_STYLE: {
        "type": "object",
        "additionalProperties": False,
        "anyOf": [{"required": ["palette"]}, {"required": ["theme_hint"]}],
        "properties": {
            "palette": {"type": "string"},
            "theme_hint": {"type": "string"},
        },
    },
    TaskKind.MODIFY_CONTENT: {
        "type": "object",
        "required": ["patch"],
        "additionalProperties": False,
        "properties": {
            "patch": {
                "type": "object",
                "required": ["operation", "target"],
                "properties": {
                    "operation": {
                        "enum": [
                            "AddView", "DeleteView", "ReplaceChartType", "EditTitle",
                            "EditDatasetField", "ReplaceLayout", "ReplaceStyle",
                        ]
                    },
                    "target": {"type": "string"},
                    "payload": {},
                },
            }
        },
    },
    TaskKind.SIMULATE_DATA: {
        "type": "object",
        "additionalProperties": False,
        "properties": {"view_ids": {"type": "array", "items": {"type": "string"}}},
    },
    TaskKind.ARRANGE_LAYOUT: {
        "type": "object",
        "additionalProperties": False,
        "properties": {},
    },
    TaskKind.STYLIZE: {
        "type": "object",
        "additionalProperties": False,
        "properties": {"theme_hint": {"type": "string"}},
    },
    TaskKind.EVALUATE: {
        "type": "object",
        "additionalProperties": False,
        "properties": {},
    },
}

_SYSTEM_PROMPT = (
    "You turn dashboard requirements into a task batch. Respond with JSON "
    'only: {"tasks": [{"kind": <kind>, "payload": <payload>}]}. Kinds: '
    + ", ".join(k.value for k in TaskKind)
    + ". Payloads must follow the documented per-kind schemas."
)


@dataclass(frozen=True)
class IntentRequest:
    """One trigger: either a free-text utterance or a pre-defined selection,
    never both, plus prior conversation turns for context."""

    utterance: str | None = None
    selection: str | None = None
    conversation_context: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        if (self.utterance is None) == (self.selection is None):
            raise ValueError("exactly one of utterance/selection must be set")


def _tasks_from_selection(selection: str) -> list[Task]:
    action, _, arg = selection.partition(":")
    if action == "modify_layout" and arg:
        return [
            Task(id="t01", kind=TaskKind.MODIFY_LAYOUT, payload={"template_id": arg})
        ]
    if action == "modify_style" and arg:
        return [Task(id="t01", kind=TaskKind.MODIFY_STYLE, payload={"palette": arg})]
    raise UnparsableIntent(f"unknown selection action {selection!r}")


def _validate_batch(raw: str) -> list[Task]:
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValueError(f"response is not JSON: {exc.msg}") from exc
    if not isinstance(data, dict) or not isinstance(data.get("tasks"), list):
        raise ValueError('response must be an object with a "tasks" array')
    if not data["tasks"]:
        raise ValueError("task batch is empty")
    tasks: list[Task] = []
    for i, item in enumerate(data["tasks"]):
        try:
            kind = TaskKind(item.get("kind"))
        except (AttributeError, ValueError) as exc:
            raise ValueError(f"tasks[{i}].kind invalid: {item!r}") from exc
        payload = item.get("payload", {})
        try:
            jsonschema.validate(payload, PAYLOAD_SCHEMAS[kind])
        except jsonschema.ValidationError as exc:
            raise ValueError(f"tasks[{i}].payload: {exc.message}") from exc
        tasks.append(Task(id=f"t{i + 1:02d}", kind=kind, payload=payload))
    return tasks


def _render_context(request: IntentRequest) -> str:
    """Conversation history section for the system prompt.

    History rides in the system prompt so mock fixture rules match only the
    current utterance, keeping replays deterministic across turns.
    """
    if not request.conversation_context:
        return ""
    lines = ["", "Prior turns:"]
    for utterance, summary in request.conversation_context[-5:]:
        lines.append(f"- user: {utterance} -> {summary}")
    return "\n".join(lines)


def extract_intent(
    request: IntentRequest,
    provider: ProviderHandle,
    context_docs: tuple[str, ...] = (),
) -> list[Task]:
    """Turn one user input into a validated task batch.

    Raises :class:`ProviderError` on transport failure and
    :class:`UnparsableIntent` when the provider output still fails payload
    validation after one corrective retry.
    """
    if request.selection is not None:
        return _tasks_from_selection(request.selection)

    system_prompt = _SYSTEM_PROMPT + _render_context(request)
    user_prompt = request.utterance or ""
    raw = provider.complete(system_prompt, user_prompt, context_docs)
    try:
        return _validate_batch(raw)
    except ValueError as first_error:
        retry_prompt = (
            f"{user_prompt}\n\nYour previous response failed validation: "
            f"{first_error}. Return corrected JSON only."
        )
        raw = provider.complete(system_prompt, retry_prompt, context_docs)
        try:
            return _validate_batch(raw)
        except ValueError as second_error:
            raise UnparsableIntent(str(second_error)) from second_error


def expand_batch(
    tasks: list[Task], have_spec: bool, have_style: bool
) -> list[Task]:
    """Complete a content batch with the pipeline stages it implies.

    Content-creating tasks need layout arrangement afterwards; a first
    generation also needs stylization; every batch ends with evaluation.
    """
    kinds = {t.kind for t in tasks}
    out = list(tasks)
    counter = len(tasks)

    def add(kind: TaskKind, payload: dict[str, Any] | None = None) -> None:
        nonlocal counter
        counter += 1
        out.append(Task(id=f"t{counter:02d}", kind=kind, payload=payload or {}))

    content_present = bool(kinds & CONTENT_KINDS)
    if (
        (content_present or not have_spec)
        and TaskKind.ARRANGE_LAYOUT not in kinds
        and TaskKind.MODIFY_LAYOUT not in kinds
    ):
        add(TaskKind.ARRANGE_LAYOUT)
    if (
        not have_style
        and TaskKind.STYLIZE not in kinds
        and TaskKind.MODIFY_STYLE not in kinds
    ):
        add(TaskKind.STYLIZE)
    if TaskKind.EVALUATE not in kinds:
        add(TaskKind.EVALUATE)
    return out
