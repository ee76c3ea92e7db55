"""Wave-by-wave plan execution with a shared result memory.

Tasks inside a wave run concurrently on a thread pool; a wave starts only
after the previous one fully finished (barrier semantics, no work stealing).
Agents never write memory themselves: the executor records each successful
result exactly once, so concurrent readers only ever see completed entries.
A failed task poisons its dependents — they are marked failed without
running — while independent tasks still complete.
"""

from __future__ import annotations

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Mapping

from dashgen.errors import DashgenError
from dashgen.planner.tasks import ExecutionPlan, Task, TaskGraph, TaskKind

_MAX_WORKERS = 16


class MissingAgent(DashgenError):
    """A plan references a task kind with no registered agent function."""


class ResultStatus(str, Enum):
    SUCCEEDED = "Succeeded"
    FAILED = "Failed"


@dataclass(frozen=True)
class TaskResult:
    task_id: str
    status: ResultStatus
    payload: Any = None
    diagnostics: tuple[str, ...] = ()

    @property
    def succeeded(self) -> bool:
        return self.status is ResultStatus.SUCCEEDED


AgentFn = Callable[[Task, Mapping[str, TaskResult]], Any]


class AgentMemory:
    """Write-once store of successful task results.

    Reads are safe at any time from any thread; each key is written exactly
    once, by the executor, after its task succeeds.
    """

    def __init__(self) -> None:
        self._entries: dict[str, tuple[TaskResult, int]] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, task_id: str) -> bool:
        return task_id in self._entries

    def write(self, result: TaskResult) -> None:
        if not result.succeeded:
            raise ValueError("memory only stores successful results")
        with self._lock:
            if result.task_id in self._entries:
                raise ValueError(f"entry {result.task_id!r} already written")
            self._entries[result.task_id] = (result, time.monotonic_ns())

    def read(self, task_id: str) -> TaskResult:
        return self._entries[task_id][0]

    def completed_at(self, task_id: str) -> int:
        """Monotonic nanosecond timestamp of the entry's write."""
        return self._entries[task_id][1]


def execute_plan(
    plan: ExecutionPlan,
    graph: TaskGraph,
    registry: Mapping[TaskKind, AgentFn],
    memory: AgentMemory,
) -> dict[str, TaskResult]:
    """Run every task in the plan; returns a result for each task id."""
    if len(memory) != 0:
        raise ValueError("memory must be empty at plan start")
    for task in graph.tasks.values():
        if task.kind not in registry:
            raise MissingAgent(f"no agent registered for kind {task.kind.value}")

    results: dict[str, TaskResult] = {}

    def run_one(task: Task) -> TaskResult:
        deps = {dep: memory.read(dep) for dep in graph.dependencies(task.id)}
        try:
            payload = registry[task.kind](task, deps)
        except Exception as exc:  # noqa: BLE001 - agent failures become results
            message = str(exc) or type(exc).__name__
            return TaskResult(
                task_id=task.id,
                status=ResultStatus.FAILED,
                diagnostics=(f"agent raised: {message}",),
            )
        return TaskResult(
            task_id=task.id, status=ResultStatus.SUCCEEDED, payload=payload
        )

    for wave in plan.waves:
        runnable: list[Task] = []
        for task_id in wave:
            task = graph.tasks[task_id]
            failed_deps = sorted(
                dep
                for dep in graph.dependencies(task_id)
                if not results[dep].succeeded
            )
            if failed_deps:
                results[task_id] = TaskResult(
                    task_id=task_id,
                    status=ResultStatus.FAILED,
                    diagnostics=tuple(f"dependency failed: {d}" for d in failed_deps),
                )
            else:
                runnable.append(task)
        if not runnable:
            continue
        with ThreadPoolExecutor(
            max_workers=min(_MAX_WORKERS, len(runnable))
        ) as pool:
            for result in pool.map(run_one, runnable):
                results[result.task_id] = result
                if result.succeeded:
                    memory.write(result)
    return results
