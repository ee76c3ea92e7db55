"""Reference grid and overlap-proportion machinery.

The screen is partitioned into rows x cols equal cells. A view's position is
modeled as the vector of per-cell overlap proportions: entry k is the share
of cell k's area covered by the view. Summing a view's entries (weighted by
cell area) recovers its own area exactly; summing plain entries over the
views grouped into a layout node yields the node's importance on the
template/modification path.

All geometry here runs on exact rationals; floats only appear at the edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from dashgen.errors import DashgenError

Rect = tuple[float, float, float, float]  # x, y, width, height


class OutOfBounds(DashgenError):
    """Rectangle extends outside the screen."""


class EmptyNode(DashgenError):
    """A layout node was assigned no views."""


@dataclass(frozen=True)
class ReferenceGrid:
    """Equal-cell partition of the screen, indexed row-major."""

    rows: int = 12
    cols: int = 12
    screen: tuple[int, int] = (1920, 1080)

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError("grid needs at least one row and one column")

    @property
    def cell_count(self) -> int:
        return self.rows * self.cols

    def cell_bounds(
        self, k: int
    ) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        """Exact (x0, y0, x1, y1) of cell k."""
        row, col = divmod(k, self.cols)
        w, h = self.screen
        return (
            Fraction(w) * col / self.cols,
            Fraction(h) * row / self.rows,
            Fraction(w) * (col + 1) / self.cols,
            Fraction(h) * (row + 1) / self.rows,
        )

    def cell_area(self) -> Fraction:
        w, h = self.screen
        return Fraction(w) * h / self.cell_count


@dataclass(frozen=True)
class OverlapProfile:
    """Per-cell overlap proportions of one view, each in [0, 1]."""

    view_id: str
    p: tuple[float, ...]

    def total(self) -> float:
        return sum(self.p)

    def centroid(self, grid: ReferenceGrid) -> tuple[float, float]:
        """Coverage-weighted centroid of the view over the grid cells."""
        wsum = xsum = ysum = Fraction(0)
        for k, pk in enumerate(self.p):
            if pk == 0:
                continue
            x0, y0, x1, y1 = grid.cell_bounds(k)
            w = Fraction(pk)
            wsum += w
            xsum += w * (x0 + x1) / 2
            ysum += w * (y0 + y1) / 2
        if wsum == 0:
            return (0.0, 0.0)
        return (float(xsum / wsum), float(ysum / wsum))


def compute_overlap_profile(
    rect: Rect, grid: ReferenceGrid, view_id: str = ""
) -> OverlapProfile:
    """Exact per-cell overlap proportions of an axis-aligned rectangle."""
    x, y, w, h = (Fraction(v) for v in rect)
    sw, sh = grid.screen
    if x < 0 or y < 0 or x + w > sw or y + h > sh or w < 0 or h < 0:
        raise OutOfBounds(f"rect {rect} outside screen {grid.screen}")
    p: list[float] = []
    cell_area = grid.cell_area()
    for k in range(grid.cell_count):
        cx0, cy0, cx1, cy1 = grid.cell_bounds(k)
        ix = max(Fraction(0), min(x + w, cx1) - max(x, cx0))
        iy = max(Fraction(0), min(y + h, cy1) - max(y, cy0))
        p.append(float(ix * iy / cell_area))
    return OverlapProfile(view_id=view_id, p=tuple(p))


def compute_importance(
    grouping: Mapping[str, str],
    profiles: Mapping[str, OverlapProfile] | None = None,
    weights: Mapping[str, float] | None = None,
    nodes: Iterable[str] | None = None,
) -> dict[str, float]:
    """Accumulate per-node importance from the views assigned to each node.

    Template/modification path: sum each member view's overlap-profile
    entries. Generation path (no prior positions): sum explicit importance
    weights. Every view must be assigned to exactly one node.
    """
    if (profiles is None) == (weights is None):
        raise ValueError("provide exactly one of profiles/weights")
    totals: dict[str, float] = {node: 0.0 for node in (nodes or [])}
    for view_id, node in grouping.items():
        if profiles is not None:
            value = profiles[view_id].total()
        else:
            value = weights[view_id]
        totals[node] = totals.get(node, 0.0) + value
    for node, value in totals.items():
        if value <= 0:
            raise EmptyNode(f"node {node!r} has no positive importance")
    return totals


def centroid_spread(
    profiles: Sequence[OverlapProfile], grid: ReferenceGrid
) -> tuple[float, float]:
    """Range of profile centroids along x and y (template orientation cue)."""
    points = [profile.centroid(grid) for profile in profiles]
    xs = [pt[0] for pt in points]
    ys = [pt[1] for pt in points]
    if not points:
        return (0.0, 0.0)
    return (max(xs) - min(xs), max(ys) - min(ys))
