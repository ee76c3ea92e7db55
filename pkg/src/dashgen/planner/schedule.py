"""Dependency classification and wave scheduling.

Batch tasks are wired into a DAG using two sources: explicit ``depends_on``
sets on the tasks themselves, and the kind-level dependency table shipped in
``data/task-dependencies.json`` (style-only edits stay independent of content
tasks; layout and stylization wait on content creation; evaluation waits on
everything). The schedule is the greedy earliest-wave layering of that DAG.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from dashgen.planner.tasks import (
    CycleDetected,
    DuplicateTaskId,
    ExecutionPlan,
    Task,
    TaskGraph,
    TaskKind,
    UnknownTaskId,
)


@lru_cache(maxsize=1)
def kind_dependency_table() -> dict[TaskKind, tuple[str, ...]]:
    raw = json.loads(
        resources.files("dashgen")
        .joinpath("data/task-dependencies.json")
        .read_text(encoding="utf-8")
    )
    return {TaskKind(k): tuple(v) for k, v in raw["depends_on"].items()}


def _find_cycle(edges: dict[str, frozenset[str]]) -> list[str]:
    """Return one concrete dependency cycle (list of ids in order)."""
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {tid: WHITE for tid in edges}
    stack: list[str] = []

    def visit(tid: str) -> list[str] | None:
        color[tid] = GRAY
        stack.append(tid)
        for dep in sorted(edges[tid]):
            if color[dep] == GRAY:
                return stack[stack.index(dep) :]
            if color[dep] == WHITE:
                found = visit(dep)
                if found:
                    return found
        color[tid] = BLACK
        stack.pop()
        return None

    for tid in sorted(edges):
        if color[tid] == WHITE:
            found = visit(tid)
            if found:
                return found
    return []


def classify_dependencies(tasks: list[Task]) -> TaskGraph:
    """Build the task DAG from explicit and kind-table dependencies."""
    ids: set[str] = set()
    for task in tasks:
        if task.id in ids:
            raise DuplicateTaskId(f"task id {task.id!r} repeats in batch")
        ids.add(task.id)

    table = kind_dependency_table()
    edges: dict[str, frozenset[str]] = {}
    for task in tasks:
        deps = set(task.depends_on)
        for ref in deps:
            if ref not in ids:
                raise UnknownTaskId(f"task {task.id!r} depends on unknown {ref!r}")
        dep_kinds = table[task.kind]
        if "*" in dep_kinds:
            deps.update(other.id for other in tasks if other.id != task.id)
        else:
            wanted = {TaskKind(k) for k in dep_kinds}
            deps.update(
                other.id
                for other in tasks
                if other.id != task.id and other.kind in wanted
            )
        edges[task.id] = frozenset(deps)

    cycle = _find_cycle(edges)
    if cycle:
        raise CycleDetected(cycle)
    return TaskGraph(tasks={t.id: t for t in tasks}, edges=edges)


def schedule_waves(graph: TaskGraph) -> ExecutionPlan:
    """Layer the DAG into parallel waves (Kahn topological layering)."""
    remaining = {tid: set(deps) for tid, deps in graph.edges.items()}
    done: set[str] = set()
    waves: list[tuple[str, ...]] = []
    while remaining:
        ready = sorted(tid for tid, deps in remaining.items() if deps <= done)
        if not ready:
            raise CycleDetected(_find_cycle(graph.edges))
        waves.append(tuple(ready))
        done.update(ready)
        for tid in ready:
            del remaining[tid]
    return ExecutionPlan(waves=tuple(waves))
