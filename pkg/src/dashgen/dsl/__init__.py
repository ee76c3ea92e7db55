"""Dashboard DSL: document model, parser, canonical serializer, patches."""

from dashgen.dsl.errors import (
    InvariantViolation,
    SpecSyntaxError,
    SpecValidationError,
    TargetNotFound,
)
from dashgen.dsl.model import (
    SCHEMA_VERSION,
    AnalysisTask,
    Channel,
    ChartSpec,
    ChartType,
    DashboardSpec,
    DatasetField,
    FieldKind,
    LayoutNode,
    LayoutTree,
    Orientation,
    SimulatedDataset,
    StyleSpec,
    ViewSpec,
    make_encoding,
)
from dashgen.dsl.parse import parse_spec, serialize_spec
from dashgen.dsl.patch import PatchOp, SpecPatch, apply_patch
from dashgen.dsl.validate import validate_spec

__all__ = [
    "SCHEMA_VERSION",
    "AnalysisTask",
    "Channel",
    "ChartSpec",
    "ChartType",
    "DashboardSpec",
    "DatasetField",
    "FieldKind",
    "InvariantViolation",
    "LayoutNode",
    "LayoutTree",
    "Orientation",
    "PatchOp",
    "SimulatedDataset",
    "SpecPatch",
    "SpecSyntaxError",
    "SpecValidationError",
    "StyleSpec",
    "TargetNotFound",
    "ViewSpec",
    "apply_patch",
    "make_encoding",
    "parse_spec",
    "serialize_spec",
    "validate_spec",
]
