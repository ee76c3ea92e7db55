"""Small-multiple arrangement inside a single view.

A view holding several charts conveys one insight; how the charts share the
view's rectangle depends on the analysis task:

- Comparison: equal side-by-side slots, identical chart types, one palette
  color per slot to carry the contrast.
- Highlight: a dominant indicator slot (at least 60% of the view) with the
  remainder as context.
- Overview: a single comprehensive slot.
- Decomposition: a primary slot (at least 55%) plus detail slots of
  different chart types.
"""

from __future__ import annotations

from dataclasses import dataclass

from dashgen.dsl.model import AnalysisTask, Orientation, ViewSpec
from dashgen.errors import DashgenError

HIGHLIGHT_DOMINANT = 0.6
DECOMPOSITION_PRIMARY = 0.55


class RuleViolation(DashgenError):
    """Chart set contradicts the view's analysis-task arrangement rule."""


@dataclass(frozen=True)
class Slot:
    chart_index: int
    fraction: float
    color_index: int | None = None


@dataclass(frozen=True)
class ArrangementDescriptor:
    """Slot flow axis plus ordered slot shares (summing to 1)."""

    axis: Orientation
    slots: tuple[Slot, ...]


def compose_small_multiple(view: ViewSpec) -> ArrangementDescriptor:
    """Arrange the view's charts according to its analysis task."""
    n = len(view.charts)
    if n == 0:
        raise RuleViolation(f"view {view.id!r} has no charts")
    task = view.analysis_task
    types = [c.chart_type for c in view.charts]

    if task is AnalysisTask.COMPARISON:
        if len(set(types)) > 1:
            raise RuleViolation(
                f"comparison view {view.id!r} mixes chart types "
                f"{sorted({t.value for t in types})}"
            )
        slots = tuple(Slot(i, 1.0 / n, color_index=i) for i in range(n))
        return ArrangementDescriptor(axis=Orientation.COLUMN, slots=slots)

    if task is AnalysisTask.HIGHLIGHT:
        if n == 1:
            return ArrangementDescriptor(
                axis=Orientation.ROW, slots=(Slot(0, 1.0),)
            )
        rest = (1.0 - HIGHLIGHT_DOMINANT) / (n - 1)
        slots = (Slot(0, HIGHLIGHT_DOMINANT),) + tuple(
            Slot(i, rest) for i in range(1, n)
        )
        return ArrangementDescriptor(axis=Orientation.ROW, slots=slots)

    if task is AnalysisTask.OVERVIEW:
        if n > 1:
            raise RuleViolation(
                f"overview view {view.id!r} must use a single comprehensive "
                f"chart, has {n}"
            )
        return ArrangementDescriptor(axis=Orientation.ROW, slots=(Slot(0, 1.0),))

    # Decomposition
    if n == 1:
        return ArrangementDescriptor(axis=Orientation.COLUMN, slots=(Slot(0, 1.0),))
    if len(set(types)) < 2:
        raise RuleViolation(
            f"decomposition view {view.id!r} needs differing chart types"
        )
    rest = (1.0 - DECOMPOSITION_PRIMARY) / (n - 1)
    slots = (Slot(0, DECOMPOSITION_PRIMARY),) + tuple(
        Slot(i, rest) for i in range(1, n)
    )
    return ArrangementDescriptor(axis=Orientation.COLUMN, slots=slots)


def slot_rects(
    descriptor: ArrangementDescriptor, rect: tuple[float, float, float, float]
) -> list[tuple[float, float, float, float]]:
    """Slice a view rectangle into per-slot rectangles (shared boundaries)."""
    x, y, w, h = rect
    horizontal = descriptor.axis is Orientation.COLUMN
    origin, extent = (x, w) if horizontal else (y, h)
    bounds = [origin]
    acc = 0.0
    for slot in descriptor.slots[:-1]:
        acc += slot.fraction
        bounds.append(origin + acc * extent)
    bounds.append(origin + extent)
    out = []
    for b0, b1 in zip(bounds, bounds[1:]):
        if horizontal:
            out.append((b0, y, b1 - b0, h))
        else:
            out.append((x, b0, w, b1 - b0))
    return out
