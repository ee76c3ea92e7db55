"""Display tasks and the seeded simulation profile."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from importlib import resources
from typing import Mapping

from dashgen.dsl.model import AnalysisTask, ChartType, DatasetField, FieldKind

#: Upper bound on display tasks per request (evaluator view-count ceiling).
MAX_DISPLAY_TASKS = 12

#: Field names treated as geographic dimensions.
GEO_NAMES = frozenset(
    {"region", "country", "province", "state", "city", "district", "location", "area"}
)

#: Measure-name tokens implying a part-of-whole reading.
PART_OF_WHOLE_TOKENS = frozenset(
    {"share", "proportion", "distribution", "pct", "percentage", "ratio"}
)


class MeasureShape(str, Enum):
    TREND = "trend"
    SEASONAL = "seasonal"
    UNIFORM = "uniform"
    PARETO = "pareto"


@dataclass(frozen=True)
class DisplayTask:
    """One concrete display requirement: what to show and how to read it."""

    title: str
    analysis_task: AnalysisTask
    field_requirements: tuple[DatasetField, ...]
    emphasis: bool = False
    requested_chart: ChartType | None = None

    def __post_init__(self) -> None:
        if not self.field_requirements:
            raise ValueError(f"display task {self.title!r} has no fields")
        temporals = [
            f for f in self.field_requirements if f.kind is FieldKind.TEMPORAL
        ]
        if len(temporals) > 1:
            raise ValueError(
                f"display task {self.title!r} has {len(temporals)} temporal fields"
            )

    def dimensions(self) -> list[DatasetField]:
        return [f for f in self.field_requirements if f.kind is FieldKind.DIMENSION]

    def measures(self) -> list[DatasetField]:
        return [f for f in self.field_requirements if f.kind is FieldKind.MEASURE]

    def temporal(self) -> DatasetField | None:
        for f in self.field_requirements:
            if f.kind is FieldKind.TEMPORAL:
                return f
        return None

    def has_geo(self) -> bool:
        return any(f.name.lower() in GEO_NAMES for f in self.dimensions())

    def part_of_whole(self) -> bool:
        for f in self.measures():
            tokens = set(f.name.lower().replace("-", "_").split("_"))
            if tokens & PART_OF_WHOLE_TOKENS or f.unit == "%":
                return True
        return False


_DEFAULT_ROW_BOUNDS: dict[ChartType, tuple[int, int]] = {
    ChartType.BAR: (4, 8),
    ChartType.LINE: (12, 24),
    ChartType.POINT: (12, 30),
    ChartType.AREA: (12, 24),
    ChartType.PIE: (3, 6),
    ChartType.MAP: (5, 8),
    ChartType.MATRIX: (12, 36),
    ChartType.TABLE: (5, 10),
    ChartType.TEXT: (1, 1),
    ChartType.GLYPH: (1, 1),
    ChartType.DIAGRAM: (5, 9),
    ChartType.CIRCLE: (4, 8),
    ChartType.SCIVIS: (1, 1),
}


@dataclass(frozen=True)
class SimulationProfile:
    """Seeded generator configuration for one dashboard request.

    Row-count bounds respect the renderer's per-chart limits (a Table view
    never receives more rows than it can draw). Shape overrides pin a
    measure (by field name) to a specific value shape.
    """

    seed: int
    domain: str = "generic"
    row_bounds: Mapping[ChartType, tuple[int, int]] = field(
        default_factory=lambda: dict(_DEFAULT_ROW_BOUNDS)
    )
    shape_overrides: Mapping[str, MeasureShape] = field(default_factory=dict)

    def bounds_for(self, chart_type: ChartType) -> tuple[int, int]:
        return self.row_bounds.get(chart_type, (5, 10))

    def shape_for(
        self,
        measure: DatasetField,
        analysis_task: AnalysisTask,
        has_temporal: bool,
        part_of_whole: bool,
    ) -> MeasureShape:
        override = self.shape_overrides.get(measure.name)
        if override is not None:
            return MeasureShape(override)
        if has_temporal:
            return (
                MeasureShape.SEASONAL
                if analysis_task is AnalysisTask.DECOMPOSITION
                else MeasureShape.TREND
            )
        if part_of_whole:
            return MeasureShape.PARETO
        return MeasureShape.UNIFORM


@lru_cache(maxsize=None)
def vocabulary_pool(domain: str) -> dict:
    """Load a domain's vocabulary pool, falling back to the generic one."""
    base = resources.files("dashgen").joinpath("data/vocab")
    candidate = base.joinpath(f"{domain}.json")
    if not candidate.is_file():
        candidate = base.joinpath("generic.json")
    return json.loads(candidate.read_text(encoding="utf-8"))


DOMAIN_KEYWORDS: tuple[tuple[str, tuple[str, ...]], ...] = (
    ("retail", ("retail", "e-commerce", "ecommerce", "store", "shopping", "merch")),
    ("health", ("health", "hospital", "patient", "clinic", "medical")),
    ("police", ("police", "crime", "incident", "precinct", "patrol")),
    ("transport", ("transport", "transit", "traffic", "flight", "logistics", "fleet")),
    ("energy", ("energy", "power", "grid", "electricity", "utility")),
    ("finance", ("finance", "financial", "bank", "portfolio", "trading", "profit")),
    ("manufacturing", ("manufactur", "factory", "production", "assembly", "plant")),
    ("agriculture", ("agricultur", "farm", "tobacco", "crop", "cultivation", "harvest")),
)


def infer_domain(text: str) -> str:
    """Keyword-match a domain tag from free text; generic when unclear."""
    lowered = text.lower()
    for domain, keywords in DOMAIN_KEYWORDS:
        if any(k in lowered for k in keywords):
            return domain
    return "generic"
