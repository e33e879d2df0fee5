"""Even-spaced axis inspection with two-finger and joystick (one-handed) modes.

The inspection range is divided into one equal step per distinct inspectable
value, so finger movement maps uniformly onto marks instead of chasing the
nearest one. Inspection is transient overlay state: it never touches the
undoable ViewState.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .canon import fmt_number, fmt_temporal
from .chart import ChartType, Dataset, FieldType
from .errors import EmptySteps, InspectionUnavailable
from .scene import Mark, MarkScene, Rect

VALUE_GROUP_EPSILON_DIP = 0.5  # screen-space merge radius for coincident values
THUMB_RANGE_FRACTION = 0.4


def even_step_index(fraction: float, step_count: int) -> int:
    """Map a [0,1] fraction onto step_count equal-width steps.

    The preimage of index i is exactly [i/N, (i+1)/N): the floor is computed
    with a one-ulp correction so representable boundary fractions land on
    their own step rather than drifting with float rounding.
    """
    if step_count == 0:
        raise EmptySteps("step count must be >= 1")
    f = min(max(fraction, 0.0), 1.0)
    idx = math.floor(f * step_count)
    if idx < step_count and f >= (idx + 1) / step_count:
        idx += 1
    elif idx > 0 and f < idx / step_count:
        idx -= 1
    return min(max(idx, 0), step_count - 1)


def axis_fraction(scene: MarkScene, axis: str, pos: tuple[float, float]) -> float:
    """Finger position -> fraction of the inspection range (y runs bottom-up)."""
    if axis == "x":
        f = pos[0] / scene.width
    else:
        f = (scene.height - pos[1]) / scene.height
    return min(max(f, 0.0), 1.0)


def joystick_map(origin: tuple[float, float], pos: tuple[float, float], box: Rect) -> tuple[float, float]:
    """Thumb position inside the thumb-range box -> (fx, fy) fractions, clamped."""
    fx = (pos[0] - box.x) / box.w
    fy = 1.0 - (pos[1] - box.y) / box.h
    return min(max(fx, 0.0), 1.0), min(max(fy, 0.0), 1.0)


def make_thumb_box(origin: tuple[float, float], viewport: Rect,
                   plot_width: float, plot_height: float,
                   fraction: float = THUMB_RANGE_FRACTION) -> Rect:
    """Thumb-range box centered at the touch origin, shifted to stay inside the viewport."""
    w = plot_width * fraction
    h = plot_height * fraction
    x = origin[0] - w / 2
    y = origin[1] - h / 2
    x = min(max(x, viewport.x), viewport.x + viewport.w - w)
    y = min(max(y, viewport.y), viewport.y + viewport.h - h)
    return Rect(x, y, w, h)


@dataclass(frozen=True)
class InspectionLine:
    axis: str  # "x" | "y"
    owner: int | None  # dragging pointer, None once the finger lifted
    step_count: int
    step_index: int
    snapped_value: object
    screen_pos: float  # dip coordinate of the rendered line
    fraction: float  # last finger fraction, kept for re-derivation
    mark_ids: tuple[int, ...]


@dataclass(frozen=True)
class JoystickSession:
    origin: tuple[float, float]
    box: Rect


@dataclass(frozen=True)
class InspectionState:
    joystick_enabled: bool = False
    line_x: InspectionLine | None = None
    line_y: InspectionLine | None = None
    primary_axis: str | None = None
    joystick: JoystickSession | None = None
    active_mark_ids: frozenset[int] = frozenset()

    def line(self, axis: str) -> InspectionLine | None:
        return self.line_x if axis == "x" else self.line_y

    def has_active_line(self) -> bool:
        return self.line_x is not None or self.line_y is not None


INITIAL_INSPECTION = InspectionState()


@dataclass(frozen=True)
class _Group:
    value: object
    screen: float
    mark_ids: tuple[int, ...]


def _axis_coord(mark: Mark, axis: str) -> float:
    return mark.center[0] if axis == "x" else mark.center[1]


def _axis_value(mark: Mark, axis: str):
    return mark.x_value if axis == "x" else mark.y_value


def _groups(scene: MarkScene, marks: list[Mark], axis: str,
            epsilon: float) -> list[_Group]:
    """Distinct axis values among `marks`, coincident ones (< epsilon dip) merged."""
    if scene.chart_type is ChartType.BAR and axis == "y":
        raise InspectionUnavailable("bar charts support x-axis inspection only")
    if not marks:
        raise InspectionUnavailable("no visible marks to inspect")
    by_value: dict = {}
    for m in marks:
        v = _axis_value(m, axis)
        entry = by_value.setdefault(v, [_axis_coord(m, axis), []])
        entry[1].append(m.mark_id)
    items = sorted(by_value.items(), key=lambda kv: (kv[1][0], str(kv[0])))
    groups: list[_Group] = []
    anchor: float | None = None
    for value, (coord, ids) in items:
        if anchor is not None and coord - anchor <= epsilon:
            g = groups[-1]
            groups[-1] = _Group(g.value, g.screen, tuple(sorted(g.mark_ids + tuple(ids))))
        else:
            groups.append(_Group(value, coord, tuple(sorted(ids))))
            anchor = coord
    # y-axis screen coordinates run opposite to values; keep value order.
    if axis == "y":
        groups.reverse()
    return groups


def _line_from_fraction(scene: MarkScene, axis: str, fraction: float,
                        candidates: list[Mark], owner: int | None,
                        epsilon: float) -> InspectionLine:
    groups = _groups(scene, candidates, axis, epsilon)
    idx = even_step_index(fraction, len(groups))
    g = groups[idx]
    return InspectionLine(axis=axis, owner=owner, step_count=len(groups), step_index=idx,
                          snapped_value=g.value, screen_pos=g.screen, fraction=fraction,
                          mark_ids=g.mark_ids)


def _marks_of(scene: MarkScene, ids: tuple[int, ...]) -> list[Mark]:
    return [scene.marks[i] for i in ids]


def update_inspection(scene: MarkScene, state: InspectionState, axis: str,
                      pos: tuple[float, float], *, owner: int | None = None,
                      epsilon: float = VALUE_GROUP_EPSILON_DIP) -> InspectionState:
    """Two-finger path: derive the fraction from the finger position along the axis."""
    return update_inspection_fraction(scene, state, axis, axis_fraction(scene, axis, pos),
                                      owner=owner, epsilon=epsilon)


def update_inspection_fraction(scene: MarkScene, state: InspectionState, axis: str,
                               fraction: float, *, owner: int | None = None,
                               epsilon: float = VALUE_GROUP_EPSILON_DIP) -> InspectionState:
    """Move one axis line to `fraction`, keeping the primary/secondary coupling.

    The primary axis steps over all marks; the secondary steps only over marks
    in the primary's current group, so the two-line intersection can never be
    empty. Moving the primary re-derives the secondary at its last fraction.
    """
    primary = state.primary_axis or axis
    all_marks = list(scene.marks)

    if axis == primary:
        line = _line_from_fraction(scene, axis, fraction, all_marks, owner, epsilon)
        other_axis = "y" if axis == "x" else "x"
        other = state.line(other_axis)
        if other is not None:
            other = _line_from_fraction(scene, other_axis, other.fraction,
                                        _marks_of(scene, line.mark_ids), other.owner, epsilon)
        refined = other if other is not None else line
        new = replace(state, primary_axis=axis, active_mark_ids=frozenset(refined.mark_ids))
        return _with_line(_with_line(new, line), other, other_axis) if other else _with_line(new, line)

    primary_line = state.line(primary)
    if primary_line is None:
        # The other axis was primary but its line is gone; this axis takes over.
        return update_inspection_fraction(scene, replace(state, primary_axis=axis),
                                          axis, fraction, owner=owner, epsilon=epsilon)
    candidates = _marks_of(scene, primary_line.mark_ids)
    line = _line_from_fraction(scene, axis, fraction, candidates, owner, epsilon)
    new = replace(state, active_mark_ids=frozenset(line.mark_ids))
    return _with_line(new, line)


def _with_line(state: InspectionState, line: InspectionLine | None,
               axis: str | None = None) -> InspectionState:
    if line is None:
        return replace(state, **{f"line_{axis}": None})
    return replace(state, **{f"line_{line.axis}": line})


def release_owner(state: InspectionState, pointer_id: int) -> InspectionState:
    """Finger lifted: its lines persist, unowned, so an axis tap can still select."""
    new = state
    for axis in ("x", "y"):
        line = new.line(axis)
        if line is not None and line.owner == pointer_id:
            new = _with_line(new, replace(line, owner=None))
    if new.joystick is not None:
        new = replace(new, joystick=None)
    return new


def deactivate_line(scene: MarkScene, state: InspectionState, axis: str,
                    *, epsilon: float = VALUE_GROUP_EPSILON_DIP) -> InspectionState:
    """Drop one line; a surviving secondary is promoted to primary over all marks."""
    other_axis = "y" if axis == "x" else "x"
    other = state.line(other_axis)
    new = _with_line(replace(state, primary_axis=None, active_mark_ids=frozenset()),
                     None, axis)
    if other is None:
        return new
    new = replace(new, primary_axis=other_axis)
    return update_inspection_fraction(scene, new, other_axis, other.fraction,
                                      owner=other.owner, epsilon=epsilon)


def clear_lines(state: InspectionState) -> InspectionState:
    return InspectionState(joystick_enabled=state.joystick_enabled)


def format_field_value(value, field_type: FieldType) -> str:
    if field_type is FieldType.NOMINAL:
        return str(value)
    if field_type is FieldType.TEMPORAL:
        return fmt_temporal(value)
    return fmt_number(value)


def tooltip_for(scene: MarkScene, data: Dataset, active_mark_ids) -> list[dict]:
    """Details-on-demand rows for the inspected marks.

    Singleton marks show their row's encoded fields; aggregate marks (bars)
    show the category and the summed measure. Rows are ordered by
    (series category, rowId) for a stable reading order.
    """
    rows: list[tuple[tuple, dict]] = []
    for mid in sorted(active_mark_ids):
        m = scene.marks[mid]
        fields: list[list[str]] = []
        if len(m.row_ids) == 1:
            row = data.rows[m.row_ids[0]]
            for axis in ("x", "y", "color"):
                enc = scene.encodings.get(axis)
                if enc is None:
                    continue
                ft = FieldType(enc["fieldType"])
                fields.append([enc["field"], format_field_value(row[enc["field"]], ft)])
        else:
            x_enc = scene.encodings["x"]
            y_enc = scene.encodings["y"]
            fields.append([x_enc["field"],
                           format_field_value(m.x_value, FieldType(x_enc["fieldType"]))])
            fields.append([f"sum({y_enc['field']})", fmt_number(m.y_value)])
        sort_key = (m.series or "", min(m.row_ids))
        rows.append((sort_key, {"series": m.series, "markId": m.mark_id, "fields": fields}))
    return [payload for _, payload in sorted(rows, key=lambda kv: kv[0])]
