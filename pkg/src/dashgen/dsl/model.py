"""Dashboard document model.

Every value here is immutable after construction and safe to share across
concurrent tasks. Constructors do not validate semantic invariants; use
:func:`dashgen.dsl.validate.validate_spec` (or :func:`dashgen.dsl.parse_spec`,
which runs it) before trusting a spec.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from dashgen.stylization.types import EmbellishmentSpec, Palette, Rgb

SCHEMA_VERSION = 1


class ChartType(str, Enum):
    BAR = "Bar"
    LINE = "Line"
    POINT = "Point"
    AREA = "Area"
    PIE = "Pie"
    MAP = "Map"
    MATRIX = "Matrix"
    TABLE = "Table"
    TEXT = "Text"
    DIAGRAM = "Diagram"
    CIRCLE = "Circle"
    GLYPH = "Glyph"
    # Parseable for round-trip fidelity, but generation never emits it and
    # the evaluator rejects any spec carrying it.
    SCIVIS = "SciVis"


class AnalysisTask(str, Enum):
    COMPARISON = "Comparison"
    HIGHLIGHT = "Highlight"
    OVERVIEW = "Overview"
    DECOMPOSITION = "Decomposition"


class FieldKind(str, Enum):
    DIMENSION = "dimension"
    MEASURE = "measure"
    TEMPORAL = "temporal"


class Channel(str, Enum):
    X = "x"
    Y = "y"
    COLOR = "color"
    SIZE = "size"
    LABEL = "label"
    VALUE = "value"


class Orientation(str, Enum):
    ROW = "Row"
    COLUMN = "Column"

    def orthogonal(self) -> Orientation:
        return Orientation.COLUMN if self is Orientation.ROW else Orientation.ROW


@dataclass(frozen=True)
class DatasetField:
    name: str
    kind: FieldKind
    unit: str | None = None

    def to_payload(self) -> dict[str, Any]:
        d: dict[str, Any] = {"name": self.name, "kind": self.kind.value}
        if self.unit is not None:
            d["unit"] = self.unit
        return d

    @classmethod
    def from_payload(cls, d: dict[str, Any]) -> DatasetField:
        return cls(name=d["name"], kind=FieldKind(d["kind"]), unit=d.get("unit"))


@dataclass(frozen=True)
class SimulatedDataset:
    """Columnar field declarations plus row tuples aligned to them."""

    fields: tuple[DatasetField, ...]
    rows: tuple[tuple[Any, ...], ...]

    def field_names(self) -> list[str]:
        return [f.name for f in self.fields]

    def column(self, name: str) -> list[Any]:
        idx = self.field_names().index(name)
        return [row[idx] for row in self.rows]

    def to_payload(self) -> dict[str, Any]:
        return {
            "fields": [f.to_payload() for f in self.fields],
            "rows": [list(r) for r in self.rows],
        }

    @classmethod
    def from_payload(cls, d: dict[str, Any]) -> SimulatedDataset:
        return cls(
            fields=tuple(DatasetField.from_payload(f) for f in d["fields"]),
            rows=tuple(tuple(r) for r in d["rows"]),
        )


def make_encoding(mapping: dict[Channel, str]) -> tuple[tuple[Channel, str], ...]:
    """Normalize a channel->field mapping into canonical sorted tuple form."""
    return tuple(sorted(mapping.items(), key=lambda kv: kv[0].value))


@dataclass(frozen=True)
class ChartSpec:
    chart_type: ChartType
    encoding: tuple[tuple[Channel, str], ...]
    dataset: SimulatedDataset

    def encoding_map(self) -> dict[Channel, str]:
        return dict(self.encoding)

    def to_payload(self) -> dict[str, Any]:
        return {
            "chart_type": self.chart_type.value,
            "encoding": {ch.value: f for ch, f in self.encoding},
            "dataset": self.dataset.to_payload(),
        }

    @classmethod
    def from_payload(cls, d: dict[str, Any]) -> ChartSpec:
        enc = tuple(
            sorted(((Channel(ch), f) for ch, f in d.get("encoding", {}).items()))
        )
        return cls(
            chart_type=ChartType(d["chart_type"]),
            encoding=enc,
            dataset=SimulatedDataset.from_payload(d["dataset"]),
        )


@dataclass(frozen=True)
class ViewSpec:
    """One bordered dashboard region serving a single analysis task.

    More than one chart makes the view a small multiple; the arrangement
    rules live in :mod:`dashgen.assembly.multiples`.
    """

    id: str
    title: str
    analysis_task: AnalysisTask
    importance: float
    charts: tuple[ChartSpec, ...]

    def to_payload(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "title": self.title,
            "analysis_task": self.analysis_task.value,
            "importance": self.importance,
            "charts": [c.to_payload() for c in self.charts],
        }

    @classmethod
    def from_payload(cls, d: dict[str, Any]) -> ViewSpec:
        return cls(
            id=d["id"],
            title=d["title"],
            analysis_task=AnalysisTask(d["analysis_task"]),
            importance=float(d["importance"]),
            charts=tuple(ChartSpec.from_payload(c) for c in d["charts"]),
        )


@dataclass(frozen=True)
class StyleSpec:
    theme_color: Rgb
    palette: Palette
    embellishments: tuple[EmbellishmentSpec, ...] = ()

    def to_payload(self) -> dict[str, Any]:
        return {
            "theme_color": list(self.theme_color),
            "palette": self.palette.to_payload(),
            "embellishments": [e.to_payload() for e in self.embellishments],
        }

    @classmethod
    def from_payload(cls, d: dict[str, Any]) -> StyleSpec:
        return cls(
            theme_color=tuple(int(v) for v in d["theme_color"]),
            palette=Palette.from_payload(d["palette"]),
            embellishments=tuple(
                EmbellishmentSpec.from_payload(e) for e in d.get("embellishments", [])
            ),
        )


@dataclass(frozen=True)
class LayoutNode:
    """Row/column split tree node; leaves carry a view id.

    ``fraction`` is the share of the parent's extent along the parent's
    split axis, in (0, 1]. Sibling fractions sum to 1.
    """

    kind: str  # "Group" | "Leaf"
    fraction: float
    orientation: Orientation | None = None
    children: tuple[LayoutNode, ...] = ()
    view_id: str | None = None

    @classmethod
    def leaf(cls, view_id: str, fraction: float) -> LayoutNode:
        return cls(kind="Leaf", fraction=fraction, view_id=view_id)

    @classmethod
    def group(
        cls,
        orientation: Orientation,
        children: tuple[LayoutNode, ...],
        fraction: float = 1.0,
    ) -> LayoutNode:
        return cls(
            kind="Group", fraction=fraction, orientation=orientation, children=children
        )

    def is_leaf(self) -> bool:
        return self.kind == "Leaf"

    def leaves(self) -> list[LayoutNode]:
        if self.is_leaf():
            return [self]
        out: list[LayoutNode] = []
        for child in self.children:
            out.extend(child.leaves())
        return out

    def depth(self) -> int:
        if self.is_leaf():
            return 0
        return 1 + max(child.depth() for child in self.children)

    def to_payload(self) -> dict[str, Any]:
        if self.is_leaf():
            return {"kind": "Leaf", "fraction": self.fraction, "view_id": self.view_id}
        return {
            "kind": "Group",
            "fraction": self.fraction,
            "orientation": self.orientation.value if self.orientation else None,
            "children": [c.to_payload() for c in self.children],
        }

    @classmethod
    def from_payload(cls, d: dict[str, Any]) -> LayoutNode:
        if d["kind"] == "Leaf":
            return cls.leaf(d["view_id"], float(d["fraction"]))
        return cls(
            kind="Group",
            fraction=float(d["fraction"]),
            orientation=Orientation(d["orientation"]),
            children=tuple(cls.from_payload(c) for c in d["children"]),
        )


@dataclass(frozen=True)
class LayoutTree:
    root: LayoutNode
    screen: tuple[int, int]

    def leaf_view_ids(self) -> list[str]:
        return [leaf.view_id for leaf in self.root.leaves()]

    def to_payload(self) -> dict[str, Any]:
        return {"root": self.root.to_payload(), "screen": list(self.screen)}

    @classmethod
    def from_payload(cls, d: dict[str, Any]) -> LayoutTree:
        return cls(
            root=LayoutNode.from_payload(d["root"]),
            screen=(int(d["screen"][0]), int(d["screen"][1])),
        )


@dataclass(frozen=True)
class DashboardSpec:
    """The abstract prototype: views, layout tree, and global style."""

    schema_version: int
    title: str
    domain: str
    style: StyleSpec
    views: tuple[ViewSpec, ...]
    layout: LayoutTree

    def view(self, view_id: str) -> ViewSpec | None:
        for v in self.views:
            if v.id == view_id:
                return v
        return None

    def to_payload(self) -> dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "title": self.title,
            "domain": self.domain,
            "style": self.style.to_payload(),
            "views": [v.to_payload() for v in self.views],
            "layout": self.layout.to_payload(),
        }

    @classmethod
    def from_payload(cls, d: dict[str, Any]) -> DashboardSpec:
        return cls(
            schema_version=int(d["schema_version"]),
            title=d["title"],
            domain=d["domain"],
            style=StyleSpec.from_payload(d["style"]),
            views=tuple(ViewSpec.from_payload(v) for v in d["views"]),
            layout=LayoutTree.from_payload(d["layout"]),
        )
