"""Task planning: intent extraction, dependency DAG, wave schedule."""

from __future__ import annotations

import json
import random

import pytest

from dashgen.errors import UnparsableIntent
from dashgen.planner import (
    CycleDetected,
    DuplicateTaskId,
    IntentRequest,
    Task,
    TaskKind,
    UnknownTaskId,
    classify_dependencies,
    expand_batch,
    extract_intent,
    schedule_waves,
)
from dashgen.provider import FixtureRule, MockFixture, ProviderHandle, ProviderMode


def _tasks_msac() -> list[Task]:
    return [
        Task(id="M", kind=TaskKind.CREATE_VIEWS),
        Task(id="S", kind=TaskKind.STYLIZE),
        Task(id="A", kind=TaskKind.ARRANGE_LAYOUT),
        Task(id="C", kind=TaskKind.MODIFY_STYLE),
    ]


def brute_force_layering(edges: dict[str, frozenset[str]]) -> list[list[str]]:
    """Independent oracle: longest dependency path from any source."""
    memo: dict[str, int] = {}

    def level(node: str) -> int:
        if node not in memo:
            deps = edges[node]
            memo[node] = 0 if not deps else 1 + max(level(d) for d in deps)
        return memo[node]

    depth = {node: level(node) for node in edges}
    waves: dict[int, list[str]] = {}
    for node, d in depth.items():
        waves.setdefault(d, []).append(node)
    return [sorted(waves[i]) for i in range(len(waves))]


def test_worked_example_waves():
    graph = classify_dependencies(_tasks_msac())
    assert graph.dependencies("S") == frozenset({"M"})
    assert graph.dependencies("A") == frozenset({"M"})
    assert graph.dependencies("C") == frozenset()
    plan = schedule_waves(graph)
    assert plan.to_payload() == {"waves": [["C", "M"], ["A", "S"]]}


def test_singleton_graph():
    graph = classify_dependencies([Task(id="X", kind=TaskKind.CREATE_VIEWS)])
    assert schedule_waves(graph).waves == (("X",),)


def test_chain_schedules_one_per_wave():
    tasks = [
        Task(id="X", kind=TaskKind.MODIFY_STYLE),
        Task(id="Y", kind=TaskKind.MODIFY_STYLE, depends_on=frozenset({"X"})),
        Task(id="Z", kind=TaskKind.MODIFY_STYLE, depends_on=frozenset({"Y"})),
    ]
    plan = schedule_waves(classify_dependencies(tasks))
    assert plan.waves == (("X",), ("Y",), ("Z",))


def test_duplicate_task_id_rejected():
    tasks = [
        Task(id="X", kind=TaskKind.CREATE_VIEWS),
        Task(id="X", kind=TaskKind.STYLIZE),
    ]
    with pytest.raises(DuplicateTaskId):
        classify_dependencies(tasks)


def test_unknown_dependency_rejected():
    with pytest.raises(UnknownTaskId):
        classify_dependencies(
            [Task(id="X", kind=TaskKind.CREATE_VIEWS, depends_on=frozenset({"Q"}))]
        )


def test_explicit_cycle_rejected():
    tasks = [
        Task(id="X", kind=TaskKind.MODIFY_STYLE, depends_on=frozenset({"Y"})),
        Task(id="Y", kind=TaskKind.MODIFY_STYLE, depends_on=frozenset({"X"})),
    ]
    with pytest.raises(CycleDetected) as excinfo:
        classify_dependencies(tasks)
    assert set(excinfo.value.cycle) == {"X", "Y"}


def test_self_dependency_rejected():
    with pytest.raises(UnknownTaskId):
        Task(id="X", kind=TaskKind.MODIFY_STYLE, depends_on=frozenset({"X"}))


def test_empty_graph_empty_plan():
    plan = schedule_waves(classify_dependencies([]))
    assert plan.waves == ()


def test_evaluate_depends_on_everything():
    tasks = _tasks_msac() + [Task(id="E", kind=TaskKind.EVALUATE)]
    graph = classify_dependencies(tasks)
    assert graph.dependencies("E") == frozenset({"M", "S", "A", "C"})
    plan = schedule_waves(graph)
    assert plan.waves[-1] == ("E",)


def _random_dag(rng: random.Random) -> list[Task]:
    n = rng.randint(1, 12)
    ids = [f"t{i:02d}" for i in range(n)]
    rng.shuffle(ids)
    tasks = []
    for i, tid in enumerate(ids):
        # Edges only from earlier positions: acyclic by construction.
        deps = {
            ids[j] for j in range(i) if rng.random() < rng.choice((0.1, 0.3, 0.5))
        }
        tasks.append(
            Task(
                id=tid,
                kind=TaskKind.MODIFY_STYLE,  # table adds no implicit edges
                depends_on=frozenset(deps),
            )
        )
    return tasks


def test_random_dags_match_brute_force_oracle():
    rng = random.Random(2024)
    for _ in range(300):
        tasks = _random_dag(rng)
        graph = classify_dependencies(tasks)
        plan = schedule_waves(graph)
        oracle = brute_force_layering(graph.edges)
        assert [list(w) for w in plan.waves] == oracle
        # ExecutionPlan invariants
        seen: set[str] = set()
        for wave in plan.waves:
            for tid in wave:
                assert graph.dependencies(tid) <= seen
            seen.update(wave)
        assert seen == set(graph.tasks)


def test_plan_determinism():
    rng = random.Random(7)
    tasks = _random_dag(rng)
    plans = {
        json.dumps(schedule_waves(classify_dependencies(tasks)).to_payload())
        for _ in range(5)
    }
    assert len(plans) == 1


# --- intent extraction --------------------------------------------------------


def test_extract_intent_pie_utterance(mock_provider):
    request = IntentRequest(utterance="Add a pie chart showing product category distribution")
    tasks = extract_intent(request, mock_provider)
    assert len(tasks) == 1
    assert tasks[0].kind is TaskKind.CREATE_VIEWS
    views = tasks[0].payload["views"]
    assert len(views) == 1
    assert views[0]["chart_type"] == "Pie"


def test_extract_intent_selection_bypasses_provider():
    provider = ProviderHandle(
        mode=ProviderMode.MOCK,
        fixture=MockFixture(
            rules=(FixtureRule(kind="any", response="never used"),)
        ),
    )
    calls = []
    original = provider.complete
    provider.complete = lambda *a, **k: calls.append(1) or original(*a, **k)  # type: ignore[method-assign]
    request = IntentRequest(selection="modify_layout:template_3")
    tasks = extract_intent(request, provider)
    assert tasks == [
        Task(
            id="t01",
            kind=TaskKind.MODIFY_LAYOUT,
            payload={"template_id": "template_3"},
        )
    ]
    assert calls == []


def test_extract_intent_malformed_twice_raises():
    provider = ProviderHandle(
        mode=ProviderMode.MOCK,
        fixture=MockFixture(
            rules=(FixtureRule(kind="any", response="not json at all"),)
        ),
    )
    with pytest.raises(UnparsableIntent):
        extract_intent(IntentRequest(utterance="anything"), provider)


def test_extract_intent_retry_recovers():
    good = json.dumps(
        {"tasks": [{"kind": "ArrangeLayout", "payload": {}}]}
    )
    provider = ProviderHandle(
        mode=ProviderMode.MOCK,
        fixture=MockFixture(
            rules=(
                FixtureRule(kind="contains", pattern="failed validation", response=good),
                FixtureRule(kind="any", response="garbage"),
            )
        ),
    )
    tasks = extract_intent(IntentRequest(utterance="anything"), provider)
    assert tasks[0].kind is TaskKind.ARRANGE_LAYOUT


def test_intent_request_requires_exactly_one_trigger():
    with pytest.raises(ValueError):
        IntentRequest(utterance="x", selection="y")
    with pytest.raises(ValueError):
        IntentRequest()


def test_expand_batch_first_generation():
    tasks = [Task(id="t01", kind=TaskKind.CREATE_VIEWS, payload={"views": []})]
    expanded = expand_batch(tasks, have_spec=False, have_style=False)
    kinds = [t.kind for t in expanded]
    assert kinds == [
        TaskKind.CREATE_VIEWS,
        TaskKind.ARRANGE_LAYOUT,
        TaskKind.STYLIZE,
        TaskKind.EVALUATE,
    ]


def test_expand_batch_style_only_edit():
    tasks = [Task(id="t01", kind=TaskKind.MODIFY_STYLE, payload={"palette": "x"})]
    expanded = expand_batch(tasks, have_spec=True, have_style=True)
    kinds = [t.kind for t in expanded]
    assert kinds == [TaskKind.MODIFY_STYLE, TaskKind.EVALUATE]
