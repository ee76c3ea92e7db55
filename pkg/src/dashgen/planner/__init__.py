"""Task planning: intent extraction, dependency DAG, wave schedule."""

from dashgen.planner.intent import (
    PAYLOAD_SCHEMAS,
    IntentRequest,
    expand_batch,
    extract_intent,
)
from dashgen.planner.schedule import (
    classify_dependencies,
    kind_dependency_table,
    schedule_waves,
)
from dashgen.planner.tasks import (
    CONTENT_KINDS,
    CycleDetected,
    DuplicateTaskId,
    ExecutionPlan,
    Task,
    TaskGraph,
    TaskKind,
    UnknownTaskId,
)

__all__ = [
    "CONTENT_KINDS",
    "PAYLOAD_SCHEMAS",
    "CycleDetected",
    "DuplicateTaskId",
    "ExecutionPlan",
    "IntentRequest",
    "Task",
    "TaskGraph",
    "TaskKind",
    "UnknownTaskId",
    "classify_dependencies",
    "expand_batch",
    "extract_intent",
    "kind_dependency_table",
    "schedule_waves",
]
