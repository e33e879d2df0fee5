"""Mark layout and hit-testing.

The layout is a pure function of (spec, data, view-state); the resulting
MarkScene is a cache the engine can always rebuild, never a source of truth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .chart import ChartSpec, ChartType, Dataset, Scale, scale_for
from .errors import SpecError

# Legend entries are fixed-size slots laid out left-to-right in the top margin.
LEGEND_ENTRY_W = 90.0
LEGEND_ENTRY_H = 20.0
LEGEND_GAP = 6.0
LEGEND_Y = -28.0

BAR_PAD_FRACTION = 0.1  # inner padding on each side of a bar's band


@dataclass(frozen=True)
class Rect:
    x: float
    y: float
    w: float
    h: float

    def contains(self, px: float, py: float) -> bool:
        return self.x <= px <= self.x + self.w and self.y <= py <= self.y + self.h

    def as_list(self) -> list[float]:
        return [self.x, self.y, self.w, self.h]


@dataclass(frozen=True)
class Mark:
    mark_id: int
    row_ids: tuple[int, ...]
    shape: str  # point | rect | lineVertex
    center: tuple[float, float]
    bounds: Rect
    x_value: object
    y_value: float
    series: str | None = None
    clipped: bool = False


@dataclass(frozen=True)
class AxisGeometry:
    band: Rect
    scale: Scale


@dataclass(frozen=True)
class LegendEntry:
    category: str
    bounds: Rect
    filtered: bool = False


@dataclass(frozen=True)
class MarkScene:
    chart_type: ChartType
    width: float
    height: float
    marks: tuple[Mark, ...]
    axis_x: AxisGeometry
    axis_y: AxisGeometry
    legend: tuple[LegendEntry, ...] = ()
    encodings: dict = field(default_factory=dict)  # axis -> {"field","fieldType"}

    def mark_by_id(self, mark_id: int) -> Mark:
        return self.marks[mark_id]

    def visible_row_ids(self) -> frozenset[int]:
        out: set[int] = set()
        for m in self.marks:
            out.update(m.row_ids)
        return frozenset(out)

    def in_plot(self, pos: tuple[float, float]) -> bool:
        return 0 <= pos[0] <= self.width and 0 <= pos[1] <= self.height


@dataclass(frozen=True)
class HitTarget:
    kind: str  # mark | legend | axisX | axisY | background
    mark_id: int | None = None
    category: str | None = None


def _clipped(center: tuple[float, float], width: float, height: float) -> bool:
    x, y = center
    return not (0 <= x <= width and 0 <= y <= height)


def layout(spec: ChartSpec, data: Dataset, view, *, axis_band_dip: float = 48.0,
           point_radius_dip: float = 4.0) -> MarkScene:
    """Lay out marks, axis hit bands, and legend for the given view state."""
    spec.validate_schema(data)
    visible = sorted(view.visible_row_ids)
    if not visible:
        raise SpecError("cannot lay out a view with zero visible rows")
    for rid in visible:
        if not 0 <= rid < len(data):
            raise SpecError(f"view references unknown rowId {rid}")

    w, h = spec.width, spec.height
    xscale = scale_for(view.scale_domains.x, (0.0, w))
    yscale = scale_for(view.scale_domains.y, (h, 0.0))

    marks: list[Mark] = []
    ct = spec.chart_type
    r = point_radius_dip

    if ct is ChartType.SCATTER:
        for rid in visible:
            row = data.rows[rid]
            xv, yv = row[spec.x.field], row[spec.y.field]
            cx, cy = xscale.apply(xv), yscale.apply(yv)
            series = row[spec.color.field] if spec.color else None
            marks.append(Mark(
                mark_id=len(marks), row_ids=(rid,), shape="point", center=(cx, cy),
                bounds=Rect(cx - r, cy - r, 2 * r, 2 * r), x_value=xv, y_value=yv,
                series=series, clipped=_clipped((cx, cy), w, h)))

    elif ct is ChartType.BAR:
        groups: dict = {}
        for rid in visible:
            row = data.rows[rid]
            groups.setdefault(row[spec.x.field], []).append(rid)
        # Band order comes from the pinned domain; categories a stale domain
        # no longer lists are parked past the right edge and flagged clipped.
        order = {c: i for i, c in enumerate(view.scale_domains.x.values)}
        lo, hi = yscale.domain
        baseline = min(max(0.0, lo), hi)
        for cat in sorted(groups, key=lambda c: (order.get(c, len(order)), str(c))):
            rids = tuple(groups[cat])
            total = math.fsum(data.rows[rid][spec.y.field] for rid in rids)
            if cat in order:
                b0, b1 = xscale.band_interval(cat)
            else:
                b0, b1 = w + r, w + r + 1.0
            pad = (b1 - b0) * BAR_PAD_FRACTION
            y_top = yscale.apply(max(total, baseline))
            y_bot = yscale.apply(min(total, baseline))
            rect = Rect(b0 + pad, y_top, (b1 - b0) - 2 * pad, max(y_bot - y_top, 0.0))
            center = (rect.x + rect.w / 2, rect.y + rect.h / 2)
            marks.append(Mark(
                mark_id=len(marks), row_ids=rids, shape="rect", center=center,
                bounds=rect, x_value=cat, y_value=total,
                clipped=_clipped(center, w, h) or cat not in order))

    else:  # multiline
        assert spec.color is not None
        by_series: dict = {}
        for rid in visible:
            by_series.setdefault(data.rows[rid][spec.color.field], []).append(rid)
        for series in by_series:
            rids = sorted(by_series[series], key=lambda i: (data.rows[i][spec.x.field], i))
            for rid in rids:
                row = data.rows[rid]
                xv, yv = row[spec.x.field], row[spec.y.field]
                cx, cy = xscale.apply(xv), yscale.apply(yv)
                marks.append(Mark(
                    mark_id=len(marks), row_ids=(rid,), shape="lineVertex", center=(cx, cy),
                    bounds=Rect(cx - r, cy - r, 2 * r, 2 * r), x_value=xv, y_value=yv,
                    series=series, clipped=_clipped((cx, cy), w, h)))

    legend: list[LegendEntry] = []
    if spec.color is not None:
        visible_cats = {data.rows[rid][spec.color.field] for rid in visible}
        all_cats = dict.fromkeys(data.values(spec.color.field))
        for i, cat in enumerate(all_cats):
            x0 = i * (LEGEND_ENTRY_W + LEGEND_GAP)
            legend.append(LegendEntry(
                category=cat, bounds=Rect(x0, LEGEND_Y, LEGEND_ENTRY_W, LEGEND_ENTRY_H),
                filtered=cat not in visible_cats))

    encodings = {"x": {"field": spec.x.field, "fieldType": spec.x.field_type.value},
                 "y": {"field": spec.y.field, "fieldType": spec.y.field_type.value}}
    if spec.color is not None:
        encodings["color"] = {"field": spec.color.field, "fieldType": spec.color.field_type.value}

    return MarkScene(
        chart_type=ct, width=w, height=h, marks=tuple(marks),
        axis_x=AxisGeometry(band=Rect(0.0, h, w, axis_band_dip), scale=xscale),
        axis_y=AxisGeometry(band=Rect(-axis_band_dip, 0.0, axis_band_dip, h), scale=yscale),
        legend=tuple(legend), encodings=encodings)


def hit_test(scene: MarkScene, pos: tuple[float, float], tolerance_dip: float) -> HitTarget:
    """Resolve a tap position: marks win over legend, legend over axes, else background.

    A mark qualifies when its center is within the fat-finger tolerance or its
    bounds contain the position; the nearest center wins and exact-distance
    ties go to the smallest markId.
    """
    if tolerance_dip < 0:
        raise SpecError("tolerance must be >= 0")
    px, py = pos
    best: tuple[float, int] | None = None
    for m in scene.marks:
        d = math.hypot(px - m.center[0], py - m.center[1])
        if d <= tolerance_dip or m.bounds.contains(px, py):
            if best is None or d < best[0]:
                best = (d, m.mark_id)
    if best is not None:
        return HitTarget(kind="mark", mark_id=best[1])
    for entry in scene.legend:
        if entry.bounds.contains(px, py):
            return HitTarget(kind="legend", category=entry.category)
    if scene.axis_x.band.contains(px, py):
        return HitTarget(kind="axisX")
    if scene.axis_y.band.contains(px, py):
        return HitTarget(kind="axisY")
    return HitTarget(kind="background")
