"""Final pipeline checkpoint: feature metrics and the pass/fail verdict.

The metrics are the measurable closure of every structural constraint the
generator promises: view budget, two-level layout with 1-4 bands, complete
view placement, no SciVis output, palette kind matching the encoded data,
comparison consistency, and fraction sums. The rule table lives in
``data/eval-rules.json`` so rules can be toggled without code edits.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from dashgen.dsl.model import (
    AnalysisTask,
    Channel,
    ChartType,
    DashboardSpec,
    FieldKind,
    LayoutNode,
)
from dashgen.stylization.palette import required_palette_kind

FRACTION_TOLERANCE = 1e-6


@dataclass(frozen=True)
class FeatureMetrics:
    view_count: int
    layout_depth: int
    level1_count: int
    unplaced_views: int
    duplicate_ids: int
    scivis_or_panel_present: bool
    palette_kind_consistent: bool
    comparison_type_consistent: bool
    fraction_sums_ok: bool


@dataclass(frozen=True)
class Verdict:
    passed: bool
    violations: tuple[tuple[str, str, str], ...]  # (rule id, path, message)

    def to_payload(self) -> dict:
        return {
            "passed": self.passed,
            "violations": [
                {"rule": r, "path": p, "message": m} for r, p, m in self.violations
            ],
        }


@lru_cache(maxsize=1)
def rule_table() -> tuple[dict, ...]:
    raw = json.loads(
        resources.files("dashgen")
        .joinpath("data/eval-rules.json")
        .read_text(encoding="utf-8")
    )
    return tuple(raw["rules"])


def _fraction_sums_ok(node: LayoutNode) -> bool:
    if node.is_leaf():
        return True
    total = sum(child.fraction for child in node.children)
    if abs(total - 1.0) > FRACTION_TOLERANCE:
        return False
    return all(_fraction_sums_ok(child) for child in node.children)


def color_encoded_kinds(spec: DashboardSpec) -> set[str]:
    """Field kinds appearing on any chart's color channel."""
    kinds: set[str] = set()
    for view in spec.views:
        for chart in view.charts:
            field_kinds = {f.name: f.kind for f in chart.dataset.fields}
            for channel, fname in chart.encoding:
                if channel is Channel.COLOR and fname in field_kinds:
                    kinds.add(field_kinds[fname].value)
    return kinds


def extract_metrics(spec: DashboardSpec) -> FeatureMetrics:
    """Compute feature metrics; accepts specs that violate semantic rules."""
    ids = [v.id for v in spec.views]
    duplicate_ids = len(ids) - len(set(ids))

    placements: dict[str, int] = {vid: 0 for vid in ids}
    dangling = 0
    for leaf in spec.layout.root.leaves():
        if leaf.view_id in placements:
            placements[leaf.view_id] += 1
        else:
            dangling += 1
    unplaced = sum(1 for count in placements.values() if count != 1) + dangling

    scivis = any(
        chart.chart_type is ChartType.SCIVIS
        for view in spec.views
        for chart in view.charts
    )

    expected_kind = required_palette_kind(color_encoded_kinds(spec))
    palette_ok = spec.style.palette.kind is expected_kind

    comparison_ok = all(
        len({c.chart_type for c in view.charts}) <= 1
        for view in spec.views
        if view.analysis_task is AnalysisTask.COMPARISON and len(view.charts) > 1
    )

    return FeatureMetrics(
        view_count=len(spec.views),
        layout_depth=spec.layout.root.depth(),
        level1_count=len(spec.layout.root.children),
        unplaced_views=unplaced,
        duplicate_ids=duplicate_ids,
        scivis_or_panel_present=scivis,
        palette_kind_consistent=palette_ok,
        comparison_type_consistent=comparison_ok,
        fraction_sums_ok=_fraction_sums_ok(spec.layout.root),
    )


_CHECKS = {
    "view-count": lambda m: not 1 <= m.view_count <= 12,
    "duplicate-ids": lambda m: m.duplicate_ids > 0,
    "unplaced-views": lambda m: m.unplaced_views > 0,
    "layout-depth": lambda m: m.layout_depth > 2,
    "level1-count": lambda m: not 1 <= m.level1_count <= 4,
    "fraction-sums": lambda m: not m.fraction_sums_ok,
    "scivis-panel": lambda m: m.scivis_or_panel_present,
    "palette-kind": lambda m: not m.palette_kind_consistent,
    "comparison-consistency": lambda m: not m.comparison_type_consistent,
}


def evaluate(metrics: FeatureMetrics) -> Verdict:
    """Apply the rule table to extracted metrics."""
    violations = []
    for rule in rule_table():
        if not rule.get("enabled", True):
            continue
        if _CHECKS[rule["id"]](metrics):
            violations.append((rule["id"], rule["path"], rule["message"]))
    return Verdict(passed=not violations, violations=tuple(violations))


def evaluate_spec(spec: DashboardSpec) -> Verdict:
    return evaluate(extract_metrics(spec))
