"""Typed pipeline tasks, their dependency graph, and the wave schedule."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from dashgen.errors import DashgenError


class TaskKind(str, Enum):
    CREATE_VIEWS = "CreateViews"
    MODIFY_VIEW = "ModifyView"
    MODIFY_LAYOUT = "ModifyLayout"
    MODIFY_STYLE = "ModifyStyle"
    MODIFY_CONTENT = "ModifyContent"
    SIMULATE_DATA = "SimulateData"
    ARRANGE_LAYOUT = "ArrangeLayout"
    STYLIZE = "Stylize"
    EVALUATE = "Evaluate"


#: Kinds that create or change view content; layout and style stages wait on
#: these inside a batch.
CONTENT_KINDS = frozenset(
    {
        TaskKind.CREATE_VIEWS,
        TaskKind.MODIFY_VIEW,
        TaskKind.MODIFY_CONTENT,
        TaskKind.SIMULATE_DATA,
    }
)


class DuplicateTaskId(DashgenError):
    pass


class UnknownTaskId(DashgenError):
    pass


class CycleDetected(DashgenError):
    def __init__(self, cycle: list[str]):
        super().__init__("dependency cycle: " + " -> ".join(cycle + cycle[:1]))
        self.cycle = cycle


@dataclass(frozen=True)
class Task:
    id: str
    kind: TaskKind
    payload: dict[str, Any] = field(default_factory=dict)
    depends_on: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        if self.id in self.depends_on:
            raise UnknownTaskId(f"task {self.id!r} depends on itself")

    def to_payload(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "kind": self.kind.value,
            "payload": self.payload,
            "depends_on": sorted(self.depends_on),
        }


@dataclass(frozen=True)
class TaskGraph:
    """Tasks keyed by id plus the dependency edge map (validated acyclic)."""

    tasks: dict[str, Task]
    edges: dict[str, frozenset[str]]  # task id -> ids it depends on

    def dependencies(self, task_id: str) -> frozenset[str]:
        return self.edges[task_id]

    def dependents(self, task_id: str) -> frozenset[str]:
        return frozenset(t for t, deps in self.edges.items() if task_id in deps)


@dataclass(frozen=True)
class ExecutionPlan:
    """Greedy level schedule: wave k holds every task whose dependencies all
    completed in waves < k, each task in the earliest wave its dependencies
    allow. Ids inside a wave are lexically sorted for determinism."""

    waves: tuple[tuple[str, ...], ...]

    def to_payload(self) -> dict[str, Any]:
        return {"waves": [list(w) for w in self.waves]}

    def wave_index(self, task_id: str) -> int:
        for i, wave in enumerate(self.waves):
            if task_id in wave:
                return i
        raise KeyError(task_id)
