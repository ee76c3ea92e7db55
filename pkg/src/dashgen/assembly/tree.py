"""Layout tree generation and realization.

The tree is a two-level hierarchy: the root splits the screen into 1-4
bands (level-1 nodes), each band is either a single view or an orthogonal
slice of level-2 leaves. Band shares are proportional to accumulated view
importance, so size reflects significance, and the most important view's
band always holds the largest share.

Construction, in order:

1. The representative view (argmax importance, spec order breaking ties)
   anchors the first band.
2. Remaining views group by analysis-task affinity into at most three more
   bands; if a band would out-weigh the representative's, its lightest
   views migrate into the representative band until dominance holds, so
   proportional allocation and representative dominance never conflict.
3. Band orientation follows the screen aspect (wide screens get columns);
   level-2 slices run orthogonally with importance-proportional fractions.

Realization maps fractions onto pixel rectangles. Boundaries are computed
cumulatively and shared between neighbors, so realized leaves tile the
screen exactly; optional snapping moves boundaries onto reference-grid
lines (never collapsing a slot, since a split never has more children than
the grid has divisions).
"""

from __future__ import annotations

from dataclasses import dataclass

from dashgen.assembly.grid import Rect, ReferenceGrid, centroid_spread
from dashgen.dsl.model import LayoutNode, LayoutTree, Orientation, ViewSpec
from dashgen.errors import DashgenError

MAX_VIEWS = 12
MAX_LEVEL1 = 4

#: Screens at least this wide relative to their height get side-by-side
#: column bands; anything squarer (or portrait) gets stacked rows.
WIDE_ASPECT = 1.4


class TooManyViews(DashgenError):
    pass


@dataclass(frozen=True)
class LayoutTemplate:
    """Predefined level-1 band structure for the layout-selection path."""

    id: str
    name: str
    orientation: Orientation
    bands: tuple[float, ...]

    @classmethod
    def from_payload(cls, d: dict) -> LayoutTemplate:
        return cls(
            id=d["id"],
            name=d["name"],
            orientation=Orientation(d["orientation"]),
            bands=tuple(float(b) for b in d["bands"]),
        )


def choose_orientation(
    importances: list[float],
    aspect: float,
    centroids_spread: tuple[float, float] | None = None,
) -> Orientation:
    """Pick the level-1 split axis.

    Generation path: wide screens split into columns, otherwise rows.
    Template/modification path (spread given): split along the axis where
    the existing view centroids spread the most.
    """
    if centroids_spread is not None:
        spread_x, spread_y = centroids_spread
        return Orientation.COLUMN if spread_x >= spread_y else Orientation.ROW
    return Orientation.COLUMN if aspect >= WIDE_ASPECT else Orientation.ROW


def _representative(views: tuple[ViewSpec, ...]) -> int:
    best = 0
    for i, view in enumerate(views):
        if view.importance > views[best].importance:
            best = i
    return best


def _group_by_task(views: list[ViewSpec]) -> list[list[ViewSpec]]:
    """Group views by analysis task (first-appearance order), merging the
    lightest groups until at most MAX_LEVEL1 - 1 remain."""
    groups: dict[str, list[ViewSpec]] = {}
    order: list[str] = []
    for view in views:
        key = view.analysis_task.value
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append(view)
    result = [groups[key] for key in order]
    while len(result) > MAX_LEVEL1 - 1:
        result.sort(key=lambda g: sum(v.importance for v in g))
        lightest, second = result[0], result[1]
        second.extend(lightest)
        result = result[1:]
    return result


def _rebalance_for_dominance(
    rep_group: list[ViewSpec], others: list[list[ViewSpec]]
) -> None:
    """Move the lightest views out of over-weight bands into the
    representative band until it carries the maximal total importance."""

    def total(group: list[ViewSpec]) -> float:
        return sum(v.importance for v in group)

    while others:
        heaviest = max(others, key=total)
        if total(heaviest) <= total(rep_group):
            break
        lightest = min(heaviest, key=lambda v: v.importance)
        heaviest.remove(lightest)
        rep_group.append(lightest)
        others[:] = [g for g in others if g]


def _node_for_group(
    group: list[ViewSpec], fraction: float, slice_orientation: Orientation
) -> LayoutNode:
    if len(group) == 1:
        return LayoutNode.leaf(group[0].id, fraction)
    total = sum(v.importance for v in group)
    children = tuple(
        LayoutNode.leaf(v.id, v.importance / total) for v in group
    )
    return LayoutNode.group(slice_orientation, children, fraction)


def build_layout_tree(
    views: list[ViewSpec] | tuple[ViewSpec, ...],
    screen: tuple[int, int] = (1920, 1080),
    template: LayoutTemplate | None = None,
) -> LayoutTree:
    """Arrange views into a two-level tree over the screen."""
    views = tuple(views)
    if not views:
        raise ValueError("cannot lay out zero views")
    if len(views) > MAX_VIEWS:
        raise TooManyViews(f"{len(views)} views exceed the limit of {MAX_VIEWS}")

    if template is not None:
        return _build_from_template(views, screen, template)

    rep_idx = _representative(views)
    rep_group = [views[rep_idx]]
    rest = [v for i, v in enumerate(views) if i != rep_idx]
    others = _group_by_task(rest) if rest else []
    _rebalance_for_dominance(rep_group, others)
    groups = [rep_group] + [g for g in others if g]

    sums = [sum(v.importance for v in g) for g in groups]
    total = sum(sums)
    orientation = choose_orientation(sums, screen[0] / screen[1])
    children = tuple(
        _node_for_group(group, s / total, orientation.orthogonal())
        for group, s in zip(groups, sums)
    )
    return LayoutTree(root=LayoutNode.group(orientation, children), screen=screen)


def _build_from_template(
    views: tuple[ViewSpec, ...], screen: tuple[int, int], template: LayoutTemplate
) -> LayoutTree:
    rep_idx = _representative(views)
    band_count = min(len(template.bands), len(views))
    fractions = list(template.bands[:band_count])
    scale = sum(fractions)
    fractions = [f / scale for f in fractions]

    # The representative view takes the widest band; the rest fill the
    # remaining bands round-robin in spec order.
    widest = max(range(band_count), key=lambda i: (fractions[i], -i))
    bands: list[list[ViewSpec]] = [[] for _ in range(band_count)]
    bands[widest].append(views[rep_idx])
    slots = [i for i in range(band_count) if i != widest] or [widest]
    rest = [v for i, v in enumerate(views) if i != rep_idx]
    for i, view in enumerate(rest):
        bands[slots[i % len(slots)]].append(view)

    children = tuple(
        _node_for_group(band, fraction, template.orientation.orthogonal())
        for band, fraction in zip(bands, fractions)
    )
    return LayoutTree(
        root=LayoutNode.group(template.orientation, children), screen=screen
    )


def choose_orientation_from_profiles(profiles, grid: ReferenceGrid) -> Orientation:
    """Template/modification-path orientation from existing view positions."""
    return choose_orientation([], 1.0, centroid_spread(profiles, grid))


def _split_boundaries(
    origin: float, extent: float, fractions: list[float]
) -> list[float]:
    bounds = [origin]
    acc = 0.0
    for fraction in fractions[:-1]:
        acc += fraction
        bounds.append(origin + acc * extent)
    bounds.append(origin + extent)
    return bounds


def _snap_boundaries(
    origin: float, extent: float, fractions: list[float], divisions: int
) -> list[float]:
    """Snap split boundaries to grid lines without collapsing any slot.

    Works in integer grid-line indices: round each boundary to the nearest
    line, then push lines apart (forward/backward passes) so each slot keeps
    at least one cell. Falls back to continuous boundaries when there are
    more slots than cells.
    """
    n = len(fractions)
    if n > divisions:
        return _split_boundaries(origin, extent, fractions)
    step = extent / divisions
    ks = [0]
    acc = 0.0
    for fraction in fractions[:-1]:
        acc += fraction
        ks.append(round(acc * divisions))
    ks.append(divisions)
    for i in range(1, n):
        ks[i] = max(ks[i], ks[i - 1] + 1)
    for i in range(n - 1, 0, -1):
        ks[i] = min(ks[i], ks[i + 1] - 1)
    bounds = [origin + k * step for k in ks]
    bounds[0] = origin
    bounds[-1] = origin + extent
    return bounds


def realize_rects(
    tree: LayoutTree,
    snap: ReferenceGrid | None = None,
    bounds: Rect | None = None,
) -> dict[str, Rect]:
    """Pixel rectangle per view id; neighbors share boundaries exactly.

    ``bounds`` restricts realization to a sub-rectangle of the screen (the
    renderer reserves a title banner); by default the whole screen is used.
    """

    rects: dict[str, Rect] = {}

    def walk(node: LayoutNode, rect: Rect) -> None:
        if node.is_leaf():
            rects[node.view_id] = rect
            return
        x, y, w, h = rect
        fractions = [c.fraction for c in node.children]
        horizontal = node.orientation is Orientation.COLUMN
        origin, extent = (x, w) if horizontal else (y, h)
        if snap is not None:
            divisions = snap.cols if horizontal else snap.rows
            bounds = _snap_boundaries(origin, extent, fractions, divisions)
        else:
            bounds = _split_boundaries(origin, extent, fractions)
        for child, (b0, b1) in zip(node.children, zip(bounds, bounds[1:])):
            if horizontal:
                walk(child, (b0, y, b1 - b0, h))
            else:
                walk(child, (x, b0, w, b1 - b0))

    if bounds is None:
        bounds = (0.0, 0.0, float(tree.screen[0]), float(tree.screen[1]))
    walk(tree.root, bounds)
    return rects
