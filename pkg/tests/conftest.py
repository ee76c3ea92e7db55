"""Shared fixtures and builders for the test suite."""

from __future__ import annotations

import pytest

from dashgen.dsl import (
    AnalysisTask,
    Channel,
    ChartSpec,
    ChartType,
    DashboardSpec,
    DatasetField,
    FieldKind,
    LayoutTree,
    SimulatedDataset,
    StyleSpec,
    ViewSpec,
    make_encoding,
)
from dashgen.assembly import build_layout_tree
from dashgen.knowledge import KnowledgeStore
from dashgen.provider import (
    MockFixture,
    ProviderHandle,
    ProviderMode,
    default_fixture_path,
)
from dashgen.service.pipeline import PipelineConfig
from dashgen.stylization import palette_presets

TOBACCO_PROMPT = (
    "Generate a prototype of the tobacco industry supply chain, including "
    "information on cultivation regions, inventory status, and sales data"
)

#: Prompt pool cycling through the mock fixture rules (plus catch-all).
GENERATION_PROMPTS = (
    TOBACCO_PROMPT,
    "Add a pie chart showing product category distribution",
    "Retail store performance overview",
    "Hospital operations monitoring wall",
    "Power grid load and output dashboard",
    "Citywide transit reliability dashboard",
)


@pytest.fixture(scope="session")
def mock_provider() -> ProviderHandle:
    return ProviderHandle(
        mode=ProviderMode.MOCK, fixture=MockFixture.load(default_fixture_path())
    )


@pytest.fixture(scope="session")
def knowledge(mock_provider: ProviderHandle) -> KnowledgeStore:
    return KnowledgeStore(mock_provider)


@pytest.fixture(scope="session")
def pipeline_config(
    mock_provider: ProviderHandle, knowledge: KnowledgeStore
) -> PipelineConfig:
    return PipelineConfig(provider=mock_provider, knowledge=knowledge, base_seed=42)


def small_dataset() -> SimulatedDataset:
    return SimulatedDataset(
        fields=(
            DatasetField("category", FieldKind.DIMENSION),
            DatasetField("value", FieldKind.MEASURE),
        ),
        rows=(("Alpha", 10.0), ("Bravo", 20.0), ("Charlie", 15.0)),
    )


def small_chart(chart_type: ChartType = ChartType.BAR) -> ChartSpec:
    return ChartSpec(
        chart_type=chart_type,
        encoding=make_encoding(
            {Channel.X: "category", Channel.Y: "value", Channel.COLOR: "category"}
        ),
        dataset=small_dataset(),
    )


def make_view(
    vid: str,
    task: AnalysisTask = AnalysisTask.COMPARISON,
    importance: float = 1.0,
    chart_types: tuple[ChartType, ...] = (ChartType.BAR,),
    title: str | None = None,
) -> ViewSpec:
    return ViewSpec(
        id=vid,
        title=title or f"View {vid}",
        analysis_task=task,
        importance=importance,
        charts=tuple(small_chart(ct) for ct in chart_types),
    )


def default_style() -> StyleSpec:
    palette = palette_presets()["deep-blue"]
    return StyleSpec(theme_color=palette.colors[0], palette=palette)


def make_spec(
    views: tuple[ViewSpec, ...],
    layout: LayoutTree | None = None,
    style: StyleSpec | None = None,
    title: str = "Test Dashboard",
    domain: str = "generic",
) -> DashboardSpec:
    return DashboardSpec(
        schema_version=1,
        title=title,
        domain=domain,
        style=style or default_style(),
        views=views,
        layout=layout or build_layout_tree(list(views)),
    )
