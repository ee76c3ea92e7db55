"""Visual channel mapping.

Fixed precedence: temporal fields take the x axis, the primary measure takes
y (or value for indicator charts), the lead dimension takes color (or x when
no temporal field occupies it). Chart families only differ in which channels
they need filled.
"""

from __future__ import annotations

from dashgen.composition.display import DisplayTask
from dashgen.dsl.model import (
    Channel,
    ChartSpec,
    ChartType,
    SimulatedDataset,
    make_encoding,
)
from dashgen.errors import DashgenError


class EncodingImpossible(DashgenError):
    """The dataset lacks a field the chart type requires."""


def map_encodings(
    task: DisplayTask, chart_type: ChartType, dataset: SimulatedDataset
) -> ChartSpec:
    """Assign channels for the chart type and return the validated chart."""
    dims = task.dimensions()
    measures = task.measures()
    temporal = task.temporal()
    enc: dict[Channel, str] = {}

    if chart_type is ChartType.MAP:
        geo_dims = [d for d in dims if d.name.lower() in _geo_names()]
        if not geo_dims or not measures:
            raise EncodingImpossible("map needs a geographic dimension and a measure")
        enc[Channel.LABEL] = geo_dims[0].name
        enc[Channel.VALUE] = measures[0].name
        enc[Channel.COLOR] = geo_dims[0].name
    elif chart_type is ChartType.PIE:
        if not dims or not measures:
            raise EncodingImpossible("pie needs a dimension and a measure")
        enc[Channel.LABEL] = dims[0].name
        enc[Channel.VALUE] = measures[0].name
        enc[Channel.COLOR] = dims[0].name
    elif chart_type in (ChartType.LINE, ChartType.AREA):
        if temporal is None or not measures:
            raise EncodingImpossible(
                f"{chart_type.value} needs a temporal field and a measure"
            )
        enc[Channel.X] = temporal.name
        enc[Channel.Y] = measures[0].name
        if dims:
            enc[Channel.COLOR] = dims[0].name
    elif chart_type is ChartType.BAR:
        if not measures:
            raise EncodingImpossible("bar needs a measure")
        if temporal is not None:
            enc[Channel.X] = temporal.name
        elif dims:
            enc[Channel.X] = dims[0].name
        else:
            raise EncodingImpossible("bar needs a dimension or temporal axis")
        enc[Channel.Y] = measures[0].name
        if dims:
            enc[Channel.COLOR] = dims[0].name
    elif chart_type is ChartType.POINT:
        if len(measures) >= 2:
            enc[Channel.X] = measures[0].name
            enc[Channel.Y] = measures[1].name
        elif temporal is not None and measures:
            enc[Channel.X] = temporal.name
            enc[Channel.Y] = measures[0].name
        else:
            raise EncodingImpossible("point needs two measures or temporal + measure")
        if dims:
            enc[Channel.COLOR] = dims[0].name
        if len(measures) >= 3:
            enc[Channel.SIZE] = measures[2].name
    elif chart_type is ChartType.MATRIX:
        if len(dims) < 2 or not measures:
            raise EncodingImpossible("matrix needs two dimensions and a measure")
        enc[Channel.X] = dims[0].name
        enc[Channel.Y] = dims[1].name
        enc[Channel.COLOR] = measures[0].name
    elif chart_type in (ChartType.TEXT, ChartType.GLYPH):
        if not measures:
            raise EncodingImpossible(
                f"{chart_type.value} needs a measure to feature"
            )
        enc[Channel.VALUE] = measures[0].name
        if dims:
            enc[Channel.LABEL] = dims[0].name
    elif chart_type is ChartType.CIRCLE:
        if not dims or not measures:
            raise EncodingImpossible("circle needs a dimension and a measure")
        enc[Channel.LABEL] = dims[0].name
        enc[Channel.VALUE] = measures[0].name
        enc[Channel.COLOR] = dims[0].name
    elif chart_type is ChartType.DIAGRAM:
        if not dims:
            raise EncodingImpossible("diagram needs at least one dimension")
        enc[Channel.LABEL] = dims[0].name
        if len(dims) >= 2:
            enc[Channel.COLOR] = dims[1].name
        if measures:
            enc[Channel.VALUE] = measures[0].name
    elif chart_type is ChartType.TABLE:
        pass  # tables render every column; no channel encoding
    else:
        raise EncodingImpossible(f"cannot encode chart type {chart_type.value}")

    names = set(dataset.field_names())
    missing = [f for f in enc.values() if f not in names]
    if missing:
        raise EncodingImpossible(f"encoded fields missing from dataset: {missing}")
    return ChartSpec(
        chart_type=chart_type, encoding=make_encoding(enc), dataset=dataset
    )


def _geo_names() -> frozenset[str]:
    from dashgen.composition.display import GEO_NAMES

    return GEO_NAMES
