"""Chart type selection from the shipped rule table."""

from __future__ import annotations

import json
import logging
from functools import lru_cache
from importlib import resources

from dashgen.composition.display import DisplayTask
from dashgen.dsl.model import ChartType
from dashgen.errors import DashgenError

logger = logging.getLogger(__name__)


class NoApplicableRule(DashgenError):
    """No rule row matches the task signature."""


@lru_cache(maxsize=1)
def chart_rule_table() -> tuple[dict, ...]:
    raw = json.loads(
        resources.files("dashgen")
        .joinpath("data/chart-rules.json")
        .read_text(encoding="utf-8")
    )
    return tuple(raw["rules"])


def task_signature(task: DisplayTask) -> dict:
    """Feature signature the rule conditions are evaluated against."""
    measures = task.measures()
    return {
        "task": task.analysis_task.value,
        "has_temporal": task.temporal() is not None,
        "has_geo": task.has_geo(),
        "part_of_whole": task.part_of_whole(),
        "n_dimensions": len(task.dimensions()),
        "n_measures": len(measures),
        "n_fields": len(task.field_requirements),
        "unit_percent": any(m.unit == "%" for m in measures),
    }


def _rule_matches(when: dict, sig: dict) -> bool:
    checks = {
        "task": lambda v: sig["task"] == v,
        "has_temporal": lambda v: sig["has_temporal"] == v,
        "has_geo": lambda v: sig["has_geo"] == v,
        "part_of_whole": lambda v: sig["part_of_whole"] == v,
        "unit_percent": lambda v: sig["unit_percent"] == v,
        "min_dimensions": lambda v: sig["n_dimensions"] >= v,
        "max_dimensions": lambda v: sig["n_dimensions"] <= v,
        "min_measures": lambda v: sig["n_measures"] >= v,
        "max_measures": lambda v: sig["n_measures"] <= v,
        "min_fields": lambda v: sig["n_fields"] >= v,
    }
    return all(checks[key](value) for key, value in when.items())


def match_chart_rule(task: DisplayTask) -> ChartType:
    """First matching rule's chart type; raises when nothing applies."""
    sig = task_signature(task)
    for rule in chart_rule_table():
        if _rule_matches(rule["when"], sig):
            return ChartType(rule["chart"])
    raise NoApplicableRule(f"no chart rule matches signature {sig}")


def select_chart_type(
    task: DisplayTask, diagnostics: list[str] | None = None
) -> ChartType:
    """Deterministic chart choice for a display task; never SciVis.

    An explicitly requested type wins. Otherwise the rule table decides,
    falling back to Bar (with a diagnostic) when no row matches.
    """
    if task.requested_chart is not None:
        if task.requested_chart is ChartType.SCIVIS:
            raise ValueError("SciVis is excluded from generation")
        return task.requested_chart
    try:
        return match_chart_rule(task)
    except NoApplicableRule as exc:
        message = f"{exc}; falling back to Bar"
        logger.info(message)
        if diagnostics is not None:
            diagnostics.append(message)
        return ChartType.BAR
