"""Session controller: routes gestures to interactions and emits ViewUpdates.

The engine is a single logical actor. Raw events are recognized into
gestures, each gesture is dispatched against the hit context at its origin
(the touch-down position, so a drag that wanders off an axis keeps
inspecting), and every ViewState-changing dispatch pushes history exactly
once. Renderers consume the emitted ViewUpdates and nothing else.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .aggregate import aggregate_selection, build_aggregate, default_aggregate_spec
from .canon import canonical_json, fmt_number, fmt_temporal
from .chart import ChartSpec, Dataset, compute_view_domains
from .errors import (AggregateRequiresSelection, EmptyDataset, EmptyDomain,
                     FocusRequiresSelection, InspectionUnavailable, NothingToRedo,
                     NothingToUndo, ProtocolError, RemoveWouldEmptyView, SpecError,
                     TouchVizError)
from .gesture import (DoubleTap, DragClass, DragEnd, DragMove, DragStart,
                      GestureConfig, GestureEvent, GestureRecognizer, JoystickToggle,
                      MenuCommand, RawInputEvent, Shake, Tap)
from .history import History
from .inspection import (INITIAL_INSPECTION, InspectionState, JoystickSession,
                         clear_lines, joystick_map, make_thumb_box, release_owner,
                         tooltip_for, update_inspection, update_inspection_fraction)
from .scene import MarkScene, Rect, hit_test, layout
from .selection import (axis_tap_select, focus, lasso_select, legend_select,
                        remove_selection, tap_select)
from .state import EMPTY_SELECTION, AggOp, ViewState

WIRE_VERSION = 1

# Table-row tags recorded in the interaction log; the coverage checker
# asserts all thirteen are exercised by the bundled sample traces.
ALL_INTERACTIONS = (
    "inspect.two_finger", "inspect.joystick",
    "select.lasso", "select.tap_mark", "select.tap_axis",
    "focus.double_tap", "remove.swipe",
    "aggregate.merge", "aggregate.by_encoding", "aggregate.operator",
    "reset.motion", "history.undo", "history.redo",
)


@dataclass(frozen=True)
class EngineConfig:
    gestures: GestureConfig = field(default_factory=GestureConfig)
    hit_tolerance_dip: float = 24.0
    axis_band_dip: float = 48.0
    point_radius_dip: float = 4.0
    value_group_epsilon_dip: float = 0.5
    thumb_range_fraction: float = 0.4
    target_bins: int = 10
    history_cap: int = 100

    @staticmethod
    def from_overrides(overrides: dict) -> "EngineConfig":
        gesture_kwargs: dict = {}
        engine_kwargs: dict = {}
        for key, raw in overrides.items():
            if key not in CONFIG_KEYS:
                raise SpecError(f"unknown config key {key!r}")
            section, attr, conv = CONFIG_KEYS[key]
            value = conv(raw)
            (gesture_kwargs if section == "gesture" else engine_kwargs)[attr] = value
        return EngineConfig(gestures=GestureConfig(**gesture_kwargs), **engine_kwargs)


CONFIG_KEYS = {
    "tapMaxMs": ("gesture", "tap_max_ms", float),
    "tapSlopDip": ("gesture", "tap_slop_dip", float),
    "doubleTapGapMs": ("gesture", "double_tap_gap_ms", float),
    "doubleTapRadiusDip": ("gesture", "double_tap_radius_dip", float),
    "swipeMinVelocityDipPerS": ("gesture", "swipe_min_velocity_dip_per_s", float),
    "swipeMaxDurationMs": ("gesture", "swipe_max_duration_ms", float),
    "swipeMinDistanceDip": ("gesture", "swipe_min_distance_dip", float),
    "shakeThresholdMps2": ("gesture", "shake_threshold_mps2", float),
    "shakeMinSamples": ("gesture", "shake_min_samples", int),
    "shakeWindowMs": ("gesture", "shake_window_ms", float),
    "shakeDebounceMs": ("gesture", "shake_debounce_ms", float),
    "gravityAlpha": ("gesture", "gravity_alpha", float),
    "hitToleranceDip": ("engine", "hit_tolerance_dip", float),
    "axisBandDip": ("engine", "axis_band_dip", float),
    "pointRadiusDip": ("engine", "point_radius_dip", float),
    "valueGroupEpsilonDip": ("engine", "value_group_epsilon_dip", float),
    "thumbRangeFraction": ("engine", "thumb_range_fraction", float),
    "targetBins": ("engine", "target_bins", int),
    "historyCap": ("engine", "history_cap", int),
}


def parse_config_file(path) -> dict:
    """UTF-8 `key = value` lines; '#' starts a comment."""
    overrides: dict = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            if "=" not in text:
                raise SpecError(f"config line {lineno}: expected `key = value`, got {line!r}")
            key, value = (part.strip() for part in text.split("=", 1))
            overrides[key] = value
    return overrides


def load_config(path) -> EngineConfig:
    return EngineConfig.from_overrides(parse_config_file(path))


@dataclass(frozen=True)
class ViewUpdate:
    kind: str  # sceneChanged | inspectionChanged | selectionChanged | tooltip | menuStateChanged | error
    payload: dict

    def to_wire(self) -> dict:
        return {"v": WIRE_VERSION, "kind": self.kind, "payload": self.payload}


def initial_view_state(spec: ChartSpec, data: Dataset) -> ViewState:
    return ViewState(visible_row_ids=frozenset(data.row_ids),
                     scale_domains=compute_view_domains(spec, data, data.row_ids))


class Session:
    """One chart, one event stream, one history."""

    def __init__(self, spec: ChartSpec, data: Dataset, config: EngineConfig | None = None):
        self.config = config or EngineConfig()
        if len(data) == 0:
            raise EmptyDataset("a session needs at least one row")
        spec.validate_schema(data)
        m = spec.margins
        if m.left < self.config.axis_band_dip or m.bottom < self.config.axis_band_dip:
            raise SpecError("left/bottom margins must reserve the axis hit band")
        self.spec = spec
        self.data = data
        self.history = History(initial_view_state(spec, data), cap=self.config.history_cap)
        self.inspection: InspectionState = INITIAL_INSPECTION
        self.recognizer = GestureRecognizer(self.config.gestures)
        self.interaction_log: list[str] = []
        self._drag_modes: dict[int, dict] = {}
        self._lasso_preview: tuple | None = None
        self._scene: MarkScene | None = None
        self._agg_cache: tuple | None = None
        self._last_menu: dict | None = None

    # ------------------------------------------------------------ state

    @property
    def view(self) -> ViewState:
        return self.history.current

    def effective(self) -> tuple[ChartSpec, Dataset]:
        """Spec and data the current view renders: base, or the derived aggregate."""
        agg = self.view.aggregate_view
        if agg is None:
            return self.spec, self.data
        if self._agg_cache is None or self._agg_cache[0] != agg:
            derived, derived_spec = build_aggregate(self.data, agg.base_selection,
                                                    agg.spec, self.spec)
            self._agg_cache = (agg, derived_spec, derived)
        return self._agg_cache[1], self._agg_cache[2]

    @property
    def scene(self) -> MarkScene:
        if self._scene is None:
            spec, data = self.effective()
            self._scene = layout(spec, data, self.view,
                                 axis_band_dip=self.config.axis_band_dip,
                                 point_radius_dip=self.config.point_radius_dip)
        return self._scene

    def snapshot(self) -> str:
        """Canonical byte-stable serialization of the view plus derived scene stats."""
        scene = self.scene
        shapes: dict[str, int] = {}
        for mark in scene.marks:
            shapes[mark.shape] = shapes.get(mark.shape, 0) + 1
        return canonical_json({
            "v": WIRE_VERSION,
            "view": self.view.to_wire(),
            "sceneStats": {
                "markCount": len(scene.marks),
                "shapes": shapes,
                "legendCount": len(scene.legend),
                "clippedCount": sum(1 for mk in scene.marks if mk.clipped),
            },
        })

    # ------------------------------------------------------------ events

    def process_raw(self, event: RawInputEvent) -> list[ViewUpdate]:
        try:
            gestures = self.recognizer.feed(event)
        except ProtocolError as err:
            return [self._error_update(err)]
        updates: list[ViewUpdate] = []
        for gesture in gestures:
            updates.extend(self.dispatch(gesture))
        return updates

    def dispatch(self, gesture: GestureEvent) -> list[ViewUpdate]:
        updates: list[ViewUpdate] = []
        if isinstance(gesture, Tap):
            self._on_tap(gesture, updates)
        elif isinstance(gesture, DoubleTap):
            self._on_double_tap(updates)
        elif isinstance(gesture, DragStart):
            self._on_drag_start(gesture, updates)
        elif isinstance(gesture, DragMove):
            self._on_drag_move(gesture, updates)
        elif isinstance(gesture, DragEnd):
            self._on_drag_end(gesture, updates)
        elif isinstance(gesture, Shake):
            self._reset_view(updates)
        elif isinstance(gesture, MenuCommand):
            self._on_menu(gesture.command, updates)
        elif isinstance(gesture, JoystickToggle):
            self._set_inspection(replace(self.inspection,
                                         joystick_enabled=not self.inspection.joystick_enabled),
                                 updates)
            self._emit_menu_if_changed(updates)
        return updates

    def bootstrap_updates(self) -> list[ViewUpdate]:
        """Initial render payloads for a freshly bound renderer."""
        updates = [self._scene_update(), self._selection_update()]
        self._last_menu = None
        self._emit_menu_if_changed(updates)
        return updates

    # ----------------------------------------------------------- routing

    def _on_tap(self, gesture: Tap, updates: list[ViewUpdate]) -> None:
        view = self.view
        hit = hit_test(self.scene, gesture.pos, self.config.hit_tolerance_dip)
        if hit.kind == "mark":
            sel = tap_select(self.scene, view.selection, gesture.pos,
                             self.config.hit_tolerance_dip)
            self._apply_view(view.with_selection(sel), updates, "select.tap_mark")
        elif hit.kind == "legend":
            _, data = self.effective()
            sel = legend_select(self.scene, data, view.selection, hit.category)
            self._apply_view(view.with_selection(sel), updates, "select.tap_mark")
        elif hit.kind in ("axisX", "axisY"):
            sel = axis_tap_select(self.inspection, self.scene, view.selection)
            self._apply_view(view.with_selection(sel), updates, "select.tap_axis")
        else:  # background: dismiss inspection, clear selection
            if self.inspection.has_active_line():
                self._set_inspection(clear_lines(self.inspection), updates)
            self._apply_view(view.with_selection(EMPTY_SELECTION), updates, None)

    def _on_double_tap(self, updates: list[ViewUpdate]) -> None:
        view = self.view
        if not view.selection.row_ids:
            return  # double tap without a selection is a no-op
        spec, data = self.effective()
        try:
            new_view = focus(view, view.selection, data, spec)
        except FocusRequiresSelection:
            return
        self._apply_view(new_view, updates, "focus.double_tap")

    def _on_drag_start(self, gesture: DragStart, updates: list[ViewUpdate]) -> None:
        pid, pos = gesture.pointer_id, gesture.pos
        scene = self.scene
        hit = hit_test(scene, pos, self.config.hit_tolerance_dip)
        axis = {"axisX": "x", "axisY": "y"}.get(hit.kind)
        if axis is not None:
            line = self.inspection.line(axis)
            if line is not None and line.owner is not None:
                self._drag_modes[pid] = {"mode": "ignored"}
                return
            try:
                new = update_inspection(scene, self.inspection, axis, pos, owner=pid,
                                        epsilon=self.config.value_group_epsilon_dip)
            except InspectionUnavailable as err:
                self._drag_modes[pid] = {"mode": "ignored"}
                updates.append(self._error_update(err))
                return
            self._drag_modes[pid] = {"mode": "inspect", "axis": axis}
            self._set_inspection(new, updates)
            self._log("inspect.two_finger")
        elif self.inspection.joystick_enabled and scene.in_plot(pos):
            self._begin_joystick(pid, pos, updates)
        else:
            self._drag_modes[pid] = {"mode": "lasso"}
            self._lasso_preview = (pos,)
            updates.append(self._inspection_update())

    def _begin_joystick(self, pid: int, pos: tuple[float, float],
                        updates: list[ViewUpdate]) -> None:
        m = self.spec.margins
        scene = self.scene
        viewport = Rect(-m.left, -m.top, scene.width + m.left + m.right,
                        scene.height + m.top + m.bottom)
        box = make_thumb_box(pos, viewport, scene.width, scene.height,
                             self.config.thumb_range_fraction)
        state = replace(self.inspection, joystick=JoystickSession(origin=pos, box=box))
        fx, fy = joystick_map(pos, pos, box)
        try:
            state = update_inspection_fraction(scene, state, "x", fx, owner=pid,
                                               epsilon=self.config.value_group_epsilon_dip)
        except InspectionUnavailable as err:
            self._drag_modes[pid] = {"mode": "ignored"}
            updates.append(self._error_update(err))
            return
        try:
            state = update_inspection_fraction(scene, state, "y", fy, owner=pid,
                                               epsilon=self.config.value_group_epsilon_dip)
        except InspectionUnavailable:
            pass  # bar charts inspect on x only
        self._drag_modes[pid] = {"mode": "joystick"}
        self._set_inspection(state, updates)
        self._log("inspect.joystick")

    def _on_drag_move(self, gesture: DragMove, updates: list[ViewUpdate]) -> None:
        ctx = self._drag_modes.get(gesture.pointer_id)
        if ctx is None:
            return
        scene = self.scene
        eps = self.config.value_group_epsilon_dip
        if ctx["mode"] == "inspect":
            try:
                new = update_inspection(scene, self.inspection, ctx["axis"], gesture.pos,
                                        owner=gesture.pointer_id, epsilon=eps)
            except InspectionUnavailable:
                return
            self._set_inspection(new, updates)
        elif ctx["mode"] == "joystick":
            js = self.inspection.joystick
            if js is None:
                return
            fx, fy = joystick_map(js.origin, gesture.pos, js.box)
            state = self.inspection
            for axis, fraction in (("x", fx), ("y", fy)):
                try:
                    state = update_inspection_fraction(scene, state, axis, fraction,
                                                       owner=gesture.pointer_id, epsilon=eps)
                except InspectionUnavailable:
                    pass
            self._set_inspection(state, updates)
        elif ctx["mode"] == "lasso":
            self._lasso_preview = gesture.path
            updates.append(self._inspection_update())

    def _on_drag_end(self, gesture: DragEnd, updates: list[ViewUpdate]) -> None:
        ctx = self._drag_modes.pop(gesture.pointer_id, {"mode": "lasso"})
        if gesture.classification is DragClass.SWIPE:
            # End inspection first, then route the swipe.
            if self.inspection.has_active_line() or self.inspection.joystick is not None:
                self._set_inspection(clear_lines(self.inspection), updates)
            if self._lasso_preview is not None:
                self._lasso_preview = None
                updates.append(self._inspection_update())
            view = self.view
            if not view.selection.row_ids:
                return  # swipe with nothing selected is inert
            try:
                new_view = remove_selection(view, view.selection)
            except RemoveWouldEmptyView as err:
                updates.append(self._error_update(err))
                return
            self._apply_view(new_view, updates, "remove.swipe")
            return

        mode = ctx["mode"]
        if mode in ("inspect", "joystick"):
            self._set_inspection(release_owner(self.inspection, gesture.pointer_id), updates)
        elif mode == "lasso":
            self._lasso_preview = None
            updates.append(self._inspection_update())
            sel = lasso_select(self.scene, list(gesture.path))
            self._apply_view(self.view.with_selection(sel), updates, "select.lasso")

    def _reset_view(self, updates: list[ViewUpdate]) -> None:
        old = self.view
        new = self.history.reset()
        if new != old:
            self._after_state_change(old, new, updates)
            self._log("reset.motion")

    def _on_menu(self, command: str, updates: list[ViewUpdate]) -> None:
        old = self.view
        if command == "history.undo":
            try:
                new = self.history.undo()
            except NothingToUndo as err:
                updates.append(self._error_update(err))
                return
            self._after_state_change(old, new, updates)
            self._log("history.undo")
        elif command == "history.redo":
            try:
                new = self.history.redo()
            except NothingToRedo as err:
                updates.append(self._error_update(err))
                return
            self._after_state_change(old, new, updates)
            self._log("history.redo")
        elif command == "aggregate.merge" or command.startswith(("aggregate.by:", "aggregate.op:")):
            self._on_aggregate(command, updates)
        else:
            updates.append(ViewUpdate("error", {
                "code": "UnknownCommand", "message": f"unknown menu command {command!r}"}))

    def _on_aggregate(self, command: str, updates: list[ViewUpdate]) -> None:
        view = self.view
        if view.aggregate_view is not None:
            base_selection = view.aggregate_view.base_selection
            current = view.aggregate_view.spec
        else:
            base_selection = view.selection.row_ids
            current = None
        default = default_aggregate_spec(self.spec, target_bins=self.config.target_bins)
        if command == "aggregate.merge":
            agg_spec, tag = default, "aggregate.merge"
        elif command.startswith("aggregate.by:"):
            agg_spec = replace(current or default, group_by=command[len("aggregate.by:"):])
            tag = "aggregate.by_encoding"
        else:
            op_name = command[len("aggregate.op:"):]
            try:
                op = AggOp(op_name)
            except ValueError:
                updates.append(ViewUpdate("error", {
                    "code": "UnknownCommand", "message": f"unknown aggregate op {op_name!r}"}))
                return
            agg_spec, tag = replace(current or default, op=op), "aggregate.operator"
        try:
            _, _, new_view = aggregate_selection(self.data, self.spec, view,
                                                 base_selection, agg_spec)
        except (AggregateRequiresSelection, SpecError, EmptyDomain) as err:
            updates.append(self._error_update(err))
            return
        self._apply_view(new_view, updates, tag)

    # -------------------------------------------------------- bookkeeping

    def _apply_view(self, new_view: ViewState, updates: list[ViewUpdate],
                    tag: str | None) -> bool:
        old = self.view
        if new_view == old:
            return False
        self.history.push(new_view)
        self._after_state_change(old, new_view, updates)
        if tag:
            self._log(tag)
        return True

    def _after_state_change(self, old: ViewState, new: ViewState,
                            updates: list[ViewUpdate]) -> None:
        scene_changed = (old.visible_row_ids != new.visible_row_ids
                         or old.scale_domains != new.scale_domains
                         or old.aggregate_view != new.aggregate_view)
        if scene_changed:
            self._scene = None
            if self.inspection.has_active_line() or self.inspection.active_mark_ids:
                self._set_inspection(clear_lines(self.inspection), updates)
            updates.append(self._scene_update())
        if old.selection != new.selection:
            updates.append(self._selection_update())
        self._emit_menu_if_changed(updates)

    def _set_inspection(self, new: InspectionState, updates: list[ViewUpdate]) -> None:
        if new == self.inspection:
            return
        self.inspection = new
        updates.append(self._inspection_update())
        updates.append(self._tooltip_update())

    def _log(self, tag: str) -> None:
        self.interaction_log.append(tag)

    # ------------------------------------------------------------- wire

    def _error_update(self, err: TouchVizError) -> ViewUpdate:
        return ViewUpdate("error", {"code": err.code, "message": str(err)})

    def _selection_update(self) -> ViewUpdate:
        return ViewUpdate("selectionChanged", self.view.selection.to_wire())

    def _tooltip_update(self) -> ViewUpdate:
        _, data = self.effective()
        rows = tooltip_for(self.scene, data, self.inspection.active_mark_ids)
        return ViewUpdate("tooltip", {"rows": rows})

    def _inspection_update(self) -> ViewUpdate:
        insp = self.inspection
        lines = []
        for axis in ("x", "y"):
            line = insp.line(axis)
            if line is None:
                continue
            enc = self.scene.encodings["x" if axis == "x" else "y"]
            lines.append({
                "axis": axis,
                "stepCount": line.step_count,
                "stepIndex": line.step_index,
                "snappedValue": line.snapped_value,
                "label": _format_by_type(line.snapped_value, enc["fieldType"]),
                "screenPos": line.screen_pos,
            })
        payload = {
            "lines": lines,
            "activeMarkIds": sorted(insp.active_mark_ids),
            "joystickEnabled": insp.joystick_enabled,
            "joystick": ({"origin": list(insp.joystick.origin),
                          "box": insp.joystick.box.as_list()}
                         if insp.joystick is not None else None),
            "lassoPath": [list(p) for p in self._lasso_preview] if self._lasso_preview else None,
        }
        return ViewUpdate("inspectionChanged", payload)

    def _menu_wire(self) -> dict:
        view = self.view
        return {
            "undo": self.history.can_undo(),
            "redo": self.history.can_redo(),
            "aggregate": bool(view.selection.row_ids) or view.aggregate_view is not None,
            "joystickEnabled": self.inspection.joystick_enabled,
        }

    def _emit_menu_if_changed(self, updates: list[ViewUpdate]) -> None:
        wire = self._menu_wire()
        if wire != self._last_menu:
            self._last_menu = wire
            updates.append(ViewUpdate("menuStateChanged", wire))

    def _scene_update(self) -> ViewUpdate:
        return ViewUpdate("sceneChanged", {"scene": scene_to_wire(self.scene)})


def _format_by_type(value, field_type: str) -> str:
    if field_type == "temporal":
        return fmt_temporal(value)
    if field_type == "nominal":
        return str(value)
    return fmt_number(float(value))


def _axis_wire(axis_geom, encoding: dict) -> dict:
    scale = axis_geom.scale
    ticks = []
    if scale.kind == "band":
        for cat in scale.domain:
            ticks.append({"pos": scale.apply(cat),
                          "label": _format_by_type(cat, encoding["fieldType"])})
    else:
        lo, hi = scale.domain
        for i in range(5):
            v = lo + (hi - lo) * i / 4
            ticks.append({"pos": scale.apply(v),
                          "label": _format_by_type(v, encoding["fieldType"])})
    return {"band": axis_geom.band.as_list(),
            "scale": {"kind": scale.kind, "domain": list(scale.domain)},
            "encoding": encoding, "ticks": ticks}


def scene_to_wire(scene: MarkScene) -> dict:
    marks = []
    for m in scene.marks:
        marks.append({
            "markId": m.mark_id,
            "rowIds": list(m.row_ids),
            "shape": m.shape,
            "center": [m.center[0], m.center[1]],
            "bounds": m.bounds.as_list(),
            "xValue": m.x_value,
            "yValue": m.y_value,
            "series": m.series,
            "clipped": m.clipped,
        })
    return {
        "chartType": scene.chart_type.value,
        "width": scene.width,
        "height": scene.height,
        "marks": marks,
        "axes": {"x": _axis_wire(scene.axis_x, scene.encodings["x"]),
                 "y": _axis_wire(scene.axis_y, scene.encodings["y"])},
        "legend": [{"category": e.category, "bounds": e.bounds.as_list(),
                    "filtered": e.filtered} for e in scene.legend],
    }
