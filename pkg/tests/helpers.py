"""Shared builders for tests: small charts, raw-event streams, oracles."""

from __future__ import annotations

from touchviz.chart import ChartSpec, ChartType, Dataset, Encoding, FieldType
from touchviz.engine import EngineConfig, Session
from touchviz.gesture import (flush_event, motion_sample, touch_down, touch_move,
                              touch_up)


def scatter_dataset(xs, ys, cats=None) -> Dataset:
    schema = {"x": FieldType.QUANTITATIVE, "y": FieldType.QUANTITATIVE}
    if cats is not None:
        schema["cat"] = FieldType.NOMINAL
    rows = []
    for i, (x, y) in enumerate(zip(xs, ys)):
        row = {"x": float(x), "y": float(y)}
        if cats is not None:
            row["cat"] = cats[i]
        rows.append(row)
    return Dataset(rows, schema)


def scatter_spec(with_color=False, width=300.0, height=300.0) -> ChartSpec:
    return ChartSpec(ChartType.SCATTER,
                     x=Encoding("x", FieldType.QUANTITATIVE),
                     y=Encoding("y", FieldType.QUANTITATIVE),
                     color=Encoding("cat", FieldType.NOMINAL) if with_color else None,
                     width=width, height=height)


def scatter_session(xs, ys, cats=None, config: EngineConfig | None = None) -> Session:
    return Session(scatter_spec(with_color=cats is not None),
                   scatter_dataset(xs, ys, cats), config)


def tap_events(pos, t0=0.0, pid=1):
    return [touch_down(t0, pid, *pos),
            touch_up(t0 + 80, pid, *pos),
            flush_event(t0 + 80 + 400)]


def double_tap_events(pos, t0=0.0, pid=1):
    return [touch_down(t0, pid, *pos),
            touch_up(t0 + 60, pid, *pos),
            touch_down(t0 + 210, pid, *pos),
            touch_up(t0 + 270, pid, *pos),
            flush_event(t0 + 700)]


def drag_events(points, duration_ms, t0=0.0, pid=1):
    events = [touch_down(t0, pid, *points[0])]
    steps = len(points) - 1
    for i, p in enumerate(points[1:], 1):
        events.append(touch_move(t0 + duration_ms * i / (steps + 1), pid, *p))
    events.append(touch_up(t0 + duration_ms, pid, *points[-1]))
    events.append(flush_event(t0 + duration_ms + 400))
    return events


def swipe_events(start, end, t0=0.0, pid=1):
    mid = ((start[0] + end[0]) / 2, (start[1] + end[1]) / 2)
    return [touch_down(t0, pid, *start),
            touch_move(t0 + 60, pid, *mid),
            touch_up(t0 + 120, pid, *end),
            flush_event(t0 + 520)]


def linear_burst(t0, magnitudes, gravity=(0.0, 0.0, 0.0), alpha=0.8, dt=80.0):
    """Raw motion samples whose high-pass linear magnitude equals `magnitudes`.

    The filter satisfies linear = alpha * (a - g_prev), so feeding
    a = g_prev + m/alpha on one axis yields |linear| = m exactly.
    Returns (events, final_gravity) so bursts can be chained.
    """
    g = list(gravity)
    events = []
    for i, m in enumerate(magnitudes):
        a = (g[0] + m / alpha, g[1], g[2])
        events.append(motion_sample(t0 + dt * i, *a))
        g = [alpha * gi + (1 - alpha) * ai for gi, ai in zip(g, a)]
    return events, tuple(g)


# --------------------------------------------------------------- oracles

def ray_cast_contains(p, polygon) -> bool:
    """Independent point-in-polygon oracle: vertical ray upward, even-odd.

    Same boundary-inclusive semantics, different casting axis and different
    arithmetic than the implementation under test.
    """
    x, y = p
    n = len(polygon)
    # boundary first
    for i in range(n):
        ax, ay = polygon[i]
        bx, by = polygon[(i + 1) % n]
        cross = (bx - ax) * (y - ay) - (by - ay) * (x - ax)
        if cross == 0 and min(ax, bx) <= x <= max(ax, bx) and min(ay, by) <= y <= max(ay, by):
            return True
    crossings = 0
    for i in range(n):
        ax, ay = polygon[i]
        bx, by = polygon[(i + 1) % n]
        if (ax <= x) != (bx <= x):  # edge spans the vertical line through p
            y_int = ay + (x - ax) * (by - ay) / (bx - ax)
            if y_int < y:  # crossing strictly below p (ray points down-to-up)
                crossings += 1
    return crossings % 2 == 1


def brute_force_groupby(values_by_rid: dict[int, object], measures_by_rid: dict[int, float],
                        bins, op: str):
    """Independent group-by oracle used against aggregate_selection."""
    import statistics

    groups: dict[object, list[float]] = {}
    order: list[object] = []
    if bins is None:
        for rid in sorted(values_by_rid):
            key = values_by_rid[rid]
            if key not in groups:
                groups[key] = []
                order.append(key)
            groups[key].append(measures_by_rid[rid])
    else:
        for lo, hi in bins:
            groups[(lo, hi)] = []
        for rid in sorted(values_by_rid):
            v = values_by_rid[rid]
            chosen = None
            for j, (lo, hi) in enumerate(bins):
                last = j == len(bins) - 1
                if (lo <= v < hi) or (last and lo <= v <= hi):
                    chosen = (lo, hi)
                    break
            assert chosen is not None, f"value {v} fell outside all bins {bins}"
            groups[chosen].append(measures_by_rid[rid])
        order = [key for key in groups if groups[key]]
        groups = {k: v for k, v in groups.items() if v}

    out = []
    for key in order:
        vals = groups[key]
        if op == "count":
            out.append((key, float(len(vals))))
        elif op == "sum":
            out.append((key, sum(vals)))
        elif op == "mean":
            out.append((key, statistics.mean(vals)))
        elif op == "min":
            out.append((key, min(vals)))
        elif op == "max":
            out.append((key, max(vals)))
        elif op == "median":
            out.append((key, float(statistics.median(vals))))
        else:
            raise AssertionError(op)
    return out
