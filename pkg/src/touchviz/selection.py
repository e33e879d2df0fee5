"""Selection (tap, legend, lasso, axis tap) and navigation (focus, remove)."""

from __future__ import annotations

from dataclasses import replace

from .chart import ChartSpec, Dataset, compute_view_domains
from .errors import FocusRequiresSelection, NoTarget, RemoveWouldEmptyView
from .inspection import InspectionState
from .scene import MarkScene, hit_test
from .state import EMPTY_SELECTION, Provenance, Selection, ViewState

Point = tuple[float, float]


def _toggle(current: Selection, row_ids: frozenset[int], provenance: Provenance) -> Selection:
    """Add the group unless every row is already selected, in which case drop it."""
    if row_ids <= current.row_ids:
        return Selection.of(current.row_ids - row_ids, current.provenance)
    return Selection.of(current.row_ids | row_ids, provenance)


def tap_select(scene: MarkScene, current: Selection, pos: Point,
               tolerance_dip: float) -> Selection:
    hit = hit_test(scene, pos, tolerance_dip)
    if hit.kind != "mark":
        raise NoTarget(f"tap at {pos} hit {hit.kind}, not a mark")
    mark = scene.marks[hit.mark_id]
    return _toggle(current, frozenset(mark.row_ids), Provenance.TAP)


def legend_select(scene: MarkScene, data: Dataset, current: Selection,
                  category: str) -> Selection:
    if all(entry.category != category for entry in scene.legend):
        raise NoTarget(f"legend category {category!r} not in scene")
    field = scene.encodings["color"]["field"]
    visible = scene.visible_row_ids()
    group = frozenset(rid for rid in visible if data.rows[rid][field] == category)
    if not group:
        return current  # fully filtered series: nothing to toggle
    return _toggle(current, group, Provenance.LEGEND)


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
    if cross != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def point_in_polygon(p: Point, polygon: list[Point]) -> bool:
    """Even-odd containment, boundary inclusive. The polygon closes last->first."""
    inside = False
    n = len(polygon)
    for i in range(n):
        a = polygon[i]
        b = polygon[(i + 1) % n]
        if _on_segment(p, a, b):
            return True
        if (a[1] <= p[1]) != (b[1] <= p[1]):
            x_int = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
            if p[0] < x_int:
                inside = not inside
    return inside


def _polygon_area2(polygon: list[Point]) -> float:
    n = len(polygon)
    acc = 0.0
    for i in range(n):
        a = polygon[i]
        b = polygon[(i + 1) % n]
        acc += a[0] * b[1] - b[0] * a[1]
    return acc


def lasso_select(scene: MarkScene, polygon: list[Point]) -> Selection:
    """Replace the selection with all marks whose center falls inside the lasso.

    Degenerate lassos (under three distinct vertices, or zero area) clear the
    selection rather than erroring: the drag happened, it just caught nothing.
    """
    if len(set(polygon)) < 3 or _polygon_area2(polygon) == 0:
        return EMPTY_SELECTION
    ids: set[int] = set()
    for m in scene.marks:
        if point_in_polygon(m.center, polygon):
            ids.update(m.row_ids)
    return Selection.of(ids, Provenance.LASSO)


def axis_tap_select(inspection: InspectionState, scene: MarkScene,
                    current: Selection) -> Selection:
    """Select the actively inspected mark(s); no active line means no change."""
    if not inspection.has_active_line():
        return current
    ids: set[int] = set()
    for mid in inspection.active_mark_ids:
        ids.update(scene.marks[mid].row_ids)
    return Selection.of(ids, Provenance.AXIS_TAP)


def focus(view: ViewState, selection: Selection, data: Dataset,
          spec: ChartSpec) -> ViewState:
    """Inclusive filter + rescale: keep only the selection and zoom the domains to it."""
    if not selection.row_ids:
        raise FocusRequiresSelection("focus needs a non-empty selection")
    domains = compute_view_domains(spec, data, selection.row_ids)
    return replace(view, visible_row_ids=frozenset(selection.row_ids),
                   scale_domains=domains, selection=EMPTY_SELECTION)


def remove_selection(view: ViewState, selection: Selection) -> ViewState:
    """Exclusive filter: drop the selection, keeping scale domains for context."""
    if not selection.row_ids:
        raise ValueError("remove needs a non-empty selection; engine guards this")
    remaining = view.visible_row_ids - selection.row_ids
    if not remaining:
        raise RemoveWouldEmptyView("removing the whole view is rejected")
    return replace(view, visible_row_ids=remaining, selection=EMPTY_SELECTION)
