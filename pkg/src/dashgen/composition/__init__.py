"""Composition: requirement decomposition, chart choice, data simulation."""

from dashgen.composition.charts import (
    NoApplicableRule,
    chart_rule_table,
    match_chart_rule,
    select_chart_type,
    task_signature,
)
from dashgen.composition.decompose import compose_views, decompose, view_importance
from dashgen.composition.display import (
    GEO_NAMES,
    MAX_DISPLAY_TASKS,
    DisplayTask,
    MeasureShape,
    SimulationProfile,
    infer_domain,
    vocabulary_pool,
)
from dashgen.composition.encode import EncodingImpossible, map_encodings
from dashgen.composition.simulate import pool_values, simulate_data

__all__ = [
    "GEO_NAMES",
    "MAX_DISPLAY_TASKS",
    "DisplayTask",
    "EncodingImpossible",
    "MeasureShape",
    "NoApplicableRule",
    "SimulationProfile",
    "chart_rule_table",
    "compose_views",
    "decompose",
    "infer_domain",
    "map_encodings",
    "match_chart_rule",
    "pool_values",
    "select_chart_type",
    "simulate_data",
    "task_signature",
    "view_importance",
    "vocabulary_pool",
]
