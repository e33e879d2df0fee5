"""Bundled demo charts and replayable sample traces.

Three study charts ship with the package: an Iris scatter plot, a US census
population bar chart, and a multi-line unemployment chart. For each chart
this module can synthesize raw-input traces, one per interaction candidate,
aimed at real scene geometry so they replay meaningfully on a fresh engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .chart import ChartSpec, ChartType, Dataset, Encoding, FieldType
from .engine import EngineConfig, Session
from .errors import SpecError
from .gesture import (RawInputEvent, flush_event, joystick_toggle, menu_command,
                      motion_sample, touch_down, touch_move, touch_up)
from .scene import MarkScene
from .selection import lasso_select
from .trace import InputTrace, TraceHeader, load_dataset, write_chart_spec, write_trace

DATA_DIR = Path(__file__).parent / "datasets"

CHART_NAMES = ("iris", "population", "unemployment")

_SCHEMAS: dict[str, dict[str, FieldType]] = {
    "iris": {
        "sepalLength": FieldType.QUANTITATIVE,
        "sepalWidth": FieldType.QUANTITATIVE,
        "petalLength": FieldType.QUANTITATIVE,
        "petalWidth": FieldType.QUANTITATIVE,
        "species": FieldType.NOMINAL,
    },
    "population": {
        "year": FieldType.NOMINAL,
        "population": FieldType.QUANTITATIVE,
    },
    "unemployment": {
        "industry": FieldType.NOMINAL,
        "date": FieldType.TEMPORAL,
        "rate": FieldType.QUANTITATIVE,
    },
}


def chart_spec_for(name: str) -> tuple[ChartSpec, dict[str, FieldType]]:
    if name == "iris":
        spec = ChartSpec(ChartType.SCATTER,
                         x=Encoding("sepalLength", FieldType.QUANTITATIVE),
                         y=Encoding("sepalWidth", FieldType.QUANTITATIVE),
                         color=Encoding("species", FieldType.NOMINAL),
                         width=360, height=360)
    elif name == "population":
        spec = ChartSpec(ChartType.BAR,
                         x=Encoding("year", FieldType.NOMINAL),
                         y=Encoding("population", FieldType.QUANTITATIVE),
                         width=420, height=300)
    elif name == "unemployment":
        spec = ChartSpec(ChartType.MULTILINE,
                         x=Encoding("date", FieldType.TEMPORAL),
                         y=Encoding("rate", FieldType.QUANTITATIVE),
                         color=Encoding("industry", FieldType.NOMINAL),
                         width=480, height=300)
    else:
        raise SpecError(f"unknown demo chart {name!r}; choose from {CHART_NAMES}")
    return spec, _SCHEMAS[name]


def load_demo(name: str) -> tuple[ChartSpec, dict[str, FieldType], Dataset]:
    spec, schema = chart_spec_for(name)
    data = load_dataset(DATA_DIR / f"{name}.csv", schema)
    return spec, schema, data


# ------------------------------------------------------------- trace builder

@dataclass
class _Timeline:
    """Accumulates raw events on a monotone clock with generous gaps."""

    events: list[RawInputEvent] = field(default_factory=list)
    t: float = 0.0

    def _emit(self, e: RawInputEvent) -> None:
        self.events.append(e)

    def gap(self, ms: float = 500.0) -> None:
        self.t += ms

    def settle(self) -> None:
        """Flush far enough ahead that any deferred tap resolves."""
        self.t += 400.0
        self._emit(flush_event(self.t))
        self.t += 100.0

    def tap(self, pos: tuple[float, float]) -> None:
        self._emit(touch_down(self.t, 1, *pos))
        self.t += 80.0
        self._emit(touch_up(self.t, 1, *pos))
        self.settle()

    def double_tap(self, pos: tuple[float, float]) -> None:
        self._emit(touch_down(self.t, 1, *pos))
        self._emit(touch_up(self.t + 60, 1, *pos))
        self._emit(touch_down(self.t + 210, 1, *pos))
        self._emit(touch_up(self.t + 270, 1, *pos))
        self.t += 270.0
        self.settle()

    def drag(self, points: list[tuple[float, float]], duration_ms: float,
             pointer_id: int = 1) -> None:
        """A slow drag through the waypoints (classifies as lasso on release)."""
        t0 = self.t
        self._emit(touch_down(t0, pointer_id, *points[0]))
        steps = len(points) - 1
        for i, p in enumerate(points[1:], 1):
            self._emit(touch_move(t0 + duration_ms * i / (steps + 1), pointer_id, *p))
        self.t = t0 + duration_ms
        self._emit(touch_up(self.t, pointer_id, *points[-1]))
        self.settle()

    def swipe(self, start: tuple[float, float], end: tuple[float, float]) -> None:
        """A fast 120 ms flick (distance must exceed the swipe minimum)."""
        t0 = self.t
        mid = ((start[0] + end[0]) / 2, (start[1] + end[1]) / 2)
        self._emit(touch_down(t0, 1, *start))
        self._emit(touch_move(t0 + 60, 1, *mid))
        self.t = t0 + 120
        self._emit(touch_up(self.t, 1, *end))
        self.settle()

    def two_finger_axis_drag(self, scene: MarkScene) -> None:
        """Concurrent drags along the x and y axis bands."""
        w, h = scene.width, scene.height
        xs = [(w * f, h + 30.0) for f in (0.1, 0.3, 0.5, 0.7)]
        ys = [(-30.0, h * (1 - f)) for f in (0.2, 0.4, 0.6)]
        t0 = self.t
        self._emit(touch_down(t0, 1, *xs[0]))
        self._emit(touch_move(t0 + 60, 1, *xs[1]))
        self._emit(touch_down(t0 + 90, 2, *ys[0]))
        self._emit(touch_move(t0 + 140, 1, *xs[2]))
        self._emit(touch_move(t0 + 180, 2, *ys[1]))
        self._emit(touch_move(t0 + 240, 1, *xs[3]))
        self._emit(touch_move(t0 + 300, 2, *ys[2]))
        self._emit(touch_up(t0 + 380, 1, *xs[3]))
        self._emit(touch_up(t0 + 430, 2, *ys[2]))
        self.t = t0 + 430
        self.settle()

    def x_axis_drag(self, scene: MarkScene, fracs=(0.15, 0.35, 0.55, 0.75)) -> None:
        points = [(scene.width * f, scene.height + 30.0) for f in fracs]
        self.drag(points, duration_ms=600.0)

    def joystick_session(self, scene: MarkScene) -> None:
        self._emit(joystick_toggle(self.t))
        self.gap(100)
        cx, cy = scene.width / 2, scene.height / 2
        # wander within the thumb-range box (40% of plot, centered at origin)
        dx, dy = scene.width * 0.12, scene.height * 0.12
        points = [(cx, cy), (cx + dx, cy), (cx + dx, cy - dy), (cx - dx, cy + dy)]
        t0 = self.t
        self._emit(touch_down(t0, 1, *points[0]))
        for i, p in enumerate(points[1:], 1):
            self._emit(touch_move(t0 + 120 * i, 1, *p))
        self.t = t0 + 120 * len(points)
        self._emit(touch_up(self.t, 1, *points[-1]))
        self.settle()
        self._emit(joystick_toggle(self.t))  # leave the mode off again
        self.gap(100)

    def shake(self) -> None:
        # Alternating-sign bursts keep the high-pass linear magnitude above
        # the 20 m/s^2 threshold for three consecutive samples.
        t0 = self.t
        for i, ax in enumerate((35.0, -35.0, 35.0)):
            self._emit(motion_sample(t0 + 80 * i, ax, 0.0, 0.0))
        self.t = t0 + 160
        self.gap(300)

    def menu(self, command: str) -> None:
        self._emit(menu_command(self.t, command))
        self.gap(200)


def _lasso_points(scene: MarkScene, count: int = 8) -> list[tuple[float, float]]:
    """A rectangle path around the first `count` mark centers (a proper subset)."""
    centers = [m.center for m in scene.marks[:count]]
    xs = [c[0] for c in centers]
    ys = [c[1] for c in centers]
    pad = 8.0
    x0, x1 = min(xs) - pad, max(xs) + pad
    y0, y1 = min(ys) - pad, max(ys) + pad
    return [(x0, y0), (x1, y0), (x1, y1), (x0, y1), (x0, y0)]


def _legend_tap_pos(scene: MarkScene, index: int = 0) -> tuple[float, float]:
    entry = scene.legend[index]
    # near the top edge of the slot, clear of the fat-finger radius of plot marks
    return (entry.bounds.x + entry.bounds.w / 2, entry.bounds.y + 2.0)


def _mark_tap_pos(scene: MarkScene) -> tuple[float, float]:
    return scene.marks[0].center


def _x_axis_tap_pos(scene: MarkScene) -> tuple[float, float]:
    return (scene.width * 0.5, scene.height + 30.0)


def build_traces(name: str) -> dict[str, InputTrace]:
    """One executable trace per applicable interaction candidate for the chart."""
    spec, schema, data = load_demo(name)
    session = Session(spec, data)
    scene = session.scene
    header = TraceHeader(chart_spec_ref="spec.json", dataset_ref="data.csv")

    lasso = _lasso_points(scene)
    caught = lasso_select(scene, lasso)
    if not caught.row_ids or caught.row_ids >= scene.visible_row_ids():
        raise SpecError(f"demo lasso for {name} must catch a proper, non-empty subset")

    def make(build) -> InputTrace:
        tl = _Timeline()
        build(tl)
        return InputTrace(header=header, events=tuple(tl.events))

    def select_then(tl: _Timeline) -> None:
        if name == "unemployment":
            tl.tap(_legend_tap_pos(scene))
        else:
            tl.tap(_mark_tap_pos(scene))

    traces: dict[str, InputTrace] = {}

    def two_finger(tl: _Timeline) -> None:
        if scene.chart_type is ChartType.BAR:
            tl.x_axis_drag(scene)  # bar charts inspect along x only
        else:
            tl.two_finger_axis_drag(scene)

    traces["inspect_two_finger"] = make(two_finger)
    traces["inspect_joystick"] = make(lambda tl: tl.joystick_session(scene))
    traces["select_lasso"] = make(lambda tl: tl.drag(lasso, duration_ms=700.0))
    traces["select_tap_mark"] = make(select_then)

    def tap_axis(tl: _Timeline) -> None:
        tl.x_axis_drag(scene)
        tl.tap(_x_axis_tap_pos(scene))

    traces["select_tap_axis"] = make(tap_axis)

    def focus(tl: _Timeline) -> None:
        tl.drag(lasso, duration_ms=700.0)
        tl.double_tap((scene.width * 0.9, scene.height * 0.9))

    traces["focus_double_tap"] = make(focus)

    def remove(tl: _Timeline) -> None:
        select_then(tl)
        tl.swipe((scene.width * 0.2, scene.height * 0.5),
                 (scene.width * 0.8, scene.height * 0.5))

    traces["remove_swipe"] = make(remove)

    def aggregate(command: str):
        def build(tl: _Timeline) -> None:
            tl.drag(lasso, duration_ms=700.0)
            tl.menu(command)
        return build

    traces["aggregate_merge"] = make(aggregate("aggregate.merge"))
    by_field = {"iris": "petalLength", "population": "year", "unemployment": "industry"}[name]
    traces["aggregate_by_encoding"] = make(aggregate(f"aggregate.by:{by_field}"))

    def aggregate_op(tl: _Timeline) -> None:
        tl.drag(lasso, duration_ms=700.0)
        tl.menu("aggregate.merge")
        tl.menu("aggregate.op:median")

    traces["aggregate_operator"] = make(aggregate_op)

    def reset(tl: _Timeline) -> None:
        select_then(tl)
        tl.shake()

    traces["reset_motion"] = make(reset)

    def undo(tl: _Timeline) -> None:
        select_then(tl)
        tl.menu("history.undo")

    traces["history_undo"] = make(undo)

    def redo(tl: _Timeline) -> None:
        select_then(tl)
        tl.menu("history.undo")
        tl.menu("history.redo")

    traces["history_redo"] = make(redo)
    return traces


def write_demo(name: str, out_dir, config: EngineConfig | None = None) -> list[Path]:
    """Write spec.json, data.csv, and the sample traces for one demo chart."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    spec, schema, _ = load_demo(name)
    written: list[Path] = []

    spec_path = out / "spec.json"
    write_chart_spec(spec, schema, spec_path)
    written.append(spec_path)

    data_path = out / "data.csv"
    data_path.write_bytes((DATA_DIR / f"{name}.csv").read_bytes())
    written.append(data_path)

    for i, (tag, trace) in enumerate(build_traces(name).items(), 1):
        path = out / f"t{i:02d}_{tag}.trace"
        write_trace(trace, path)
        written.append(path)
    return written
