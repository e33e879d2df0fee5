import random
from dataclasses import replace

import pytest

from touchviz.engine import EngineConfig, Session, load_config
from touchviz.errors import SpecError
from touchviz.gesture import (DoubleTap, DragClass, DragEnd, JoystickToggle,
                              MenuCommand, Shake, Tap, flush_event, touch_down,
                              touch_move, touch_up)
from touchviz.state import Provenance, Selection

from helpers import (drag_events, linear_burst, scatter_dataset, scatter_session,
                     scatter_spec, swipe_events, tap_events)


def five_point_session(**kwargs):
    # widely spaced marks so taps land unambiguously
    return scatter_session([1, 2, 3, 4, 5], [1, 2, 3, 4, 5], **kwargs)


def feed(session, events):
    updates = []
    for e in events:
        updates.extend(session.process_raw(e))
    return updates


def kinds(updates):
    return [u.kind for u in updates]


class TestProcessRaw:
    def test_tap_on_mark_emits_selection_change(self):
        s = five_point_session()
        pos = s.scene.marks[2].center
        updates = feed(s, tap_events(pos))
        assert "selectionChanged" in kinds(updates)
        assert s.view.selection.row_ids == {2}

    def test_motion_burst_resets_view(self):
        s = five_point_session()
        s.dispatch(Tap(s.scene.marks[0].center))
        s.dispatch(DoubleTap(s.scene.marks[0].center))  # focus: scene changes
        assert s.view.visible_row_ids == {0}
        events, _ = linear_burst(0, [25, 25, 25])
        updates = feed(s, events)
        assert "sceneChanged" in kinds(updates)
        assert s.view == s.history.initial

    def test_orphan_touch_up_is_error_and_state_unchanged(self):
        s = five_point_session()
        before = s.snapshot()
        updates = feed(s, [touch_up(0, 9, 10, 10)])
        assert kinds(updates) == ["error"]
        assert updates[0].payload["code"] == "ProtocolError"
        assert s.snapshot() == before

    def test_wire_format_versioned(self):
        s = five_point_session()
        update = feed(s, tap_events(s.scene.marks[0].center))[0]
        wire = update.to_wire()
        assert wire["v"] == 1 and set(wire) == {"v", "kind", "payload"}


class TestDispatchRouting:
    def test_double_tap_focus_requires_selection(self):
        s = five_point_session()
        assert s.dispatch(DoubleTap((10.0, 10.0))) == []  # silent no-op
        s.dispatch(Tap(s.scene.marks[3].center))
        s.dispatch(Tap(s.scene.marks[4].center))
        updates = s.dispatch(DoubleTap((10.0, 10.0)))
        assert "sceneChanged" in kinds(updates)
        assert s.view.visible_row_ids == {3, 4}
        lo, hi = s.view.scale_domains.x.values
        assert lo < 4.0 and hi > 5.0

    def test_swipe_with_empty_selection_is_inert(self):
        s = five_point_session()
        before = s.snapshot()
        depth = len(s.history.past)
        updates = feed(s, swipe_events((20, 150), (280, 150)))
        # transient path previews may surface, but no state, error, or history change
        assert not {"sceneChanged", "selectionChanged", "error"} & set(kinds(updates))
        assert s.snapshot() == before and len(s.history.past) == depth

    def test_swipe_removes_selection_keeps_domains(self):
        s = five_point_session()
        s.dispatch(Tap(s.scene.marks[1].center))
        domains = s.view.scale_domains
        updates = feed(s, swipe_events((20, 150), (280, 150)))
        assert "sceneChanged" in kinds(updates)
        assert s.view.visible_row_ids == {0, 2, 3, 4}
        assert s.view.scale_domains == domains

    def test_remove_all_guard_emits_error(self):
        s = five_point_session()
        for m in list(s.scene.marks):
            s.dispatch(Tap(m.center))
        assert s.view.selection.row_ids == {0, 1, 2, 3, 4}
        before = s.snapshot()
        updates = feed(s, swipe_events((20, 150), (280, 150)))
        assert any(u.kind == "error" and u.payload["code"] == "RemoveWouldEmptyView"
                   for u in updates)
        assert s.snapshot() == before

    def test_background_tap_clears_selection_and_lines(self):
        s = five_point_session()
        s.dispatch(Tap(s.scene.marks[0].center))
        feed(s, drag_events([(30, s.scene.height + 20), (200, s.scene.height + 20)], 600))
        assert s.inspection.has_active_line()
        bg = (4.0, 4.0)  # top-left plot corner, far from the diagonal of marks
        updates = feed(s, tap_events(bg, t0=10_000))
        assert s.view.selection.row_ids == set()
        assert not s.inspection.has_active_line()
        assert "selectionChanged" in kinds(updates)

    def test_legend_tap_selects_group(self):
        s = scatter_session([1, 2, 3, 4], [1, 2, 3, 4], cats=["a", "a", "b", "b"])
        entry = s.scene.legend[0]
        pos = (entry.bounds.x + entry.bounds.w / 2, entry.bounds.y + 2)
        feed(s, tap_events(pos))
        assert s.view.selection == Selection.of({0, 1}, Provenance.LEGEND)
        feed(s, tap_events(pos, t0=5000))
        assert s.view.selection.row_ids == set()

    def test_axis_tap_selects_inspected_marks(self):
        s = five_point_session()
        feed(s, drag_events([(30, s.scene.height + 20), (150, s.scene.height + 20)], 600))
        line = s.inspection.line_x
        assert line is not None and line.owner is None  # persists after the finger lifts
        feed(s, tap_events((150.0, s.scene.height + 30.0), t0=20_000))
        assert s.view.selection.provenance is Provenance.AXIS_TAP
        assert s.view.selection.row_ids

    def test_drag_keeps_axis_context_when_wandering(self):
        s = five_point_session()
        h = s.scene.height
        events = [touch_down(0, 1, 30, h + 20),
                  touch_move(100, 1, 120, h + 20),
                  touch_move(200, 1, 200, h / 2),  # wanders into the plot
                  touch_up(700, 1, 210, h / 2),
                  flush_event(1200)]
        feed(s, events)
        assert s.inspection.line_x is not None
        assert len(s.history.past) == 0  # inspection never mutates view state

    def test_lasso_drag_selects_and_previews(self):
        s = five_point_session()
        c0, c2 = s.scene.marks[0].center, s.scene.marks[2].center
        x0, y0 = min(c0[0], c2[0]) - 10, min(c0[1], c2[1]) - 10
        x1, y1 = max(c0[0], c2[0]) + 10, max(c0[1], c2[1]) + 10
        poly = [(x0, y0), (x1, y0), (x1, y1), (x0, y1), (x0, y0)]
        updates = feed(s, drag_events(poly, 700))
        assert any(u.kind == "inspectionChanged" and u.payload["lassoPath"] for u in updates)
        assert s.view.selection.provenance is Provenance.LASSO
        assert s.view.selection.row_ids == {0, 1, 2}

    def test_unknown_menu_command(self):
        s = five_point_session()
        updates = s.dispatch(MenuCommand("frobnicate"))
        assert kinds(updates) == ["error"]
        assert updates[0].payload["code"] == "UnknownCommand"

    def test_undo_redo_via_menu(self):
        s = five_point_session()
        initial = s.snapshot()
        s.dispatch(Tap(s.scene.marks[0].center))
        after = s.snapshot()
        s.dispatch(MenuCommand("history.undo"))
        assert s.snapshot() == initial
        s.dispatch(MenuCommand("history.redo"))
        assert s.snapshot() == after

    def test_undo_at_initial_is_error_update(self):
        s = five_point_session()
        updates = s.dispatch(MenuCommand("history.undo"))
        assert updates[0].payload["code"] == "NothingToUndo"


class TestJoystickRouting:
    def test_toggle_then_drag_inspects_both_axes(self):
        s = five_point_session()
        updates = s.dispatch(JoystickToggle())
        assert s.inspection.joystick_enabled
        assert any(u.kind == "menuStateChanged" and u.payload["joystickEnabled"]
                   for u in updates)
        cx, cy = s.scene.width / 2, s.scene.height / 2
        events = [touch_down(0, 1, cx, cy),
                  touch_move(100, 1, cx + 20, cy - 15),
                  touch_move(200, 1, cx + 40, cy - 30),
                  touch_up(800, 1, cx + 40, cy - 30),
                  flush_event(1300)]
        feed(s, events)
        assert s.inspection.line_x is not None and s.inspection.line_y is not None
        assert s.inspection.active_mark_ids
        assert len(s.history.past) == 0

    def test_joystick_disabled_plot_drag_is_lasso(self):
        s = five_point_session()
        cx, cy = s.scene.width / 2, s.scene.height / 2
        feed(s, drag_events([(cx, cy), (cx + 30, cy), (cx + 30, cy + 30)], 600))
        assert s.inspection.line_x is None


class TestAggregateRouting:
    def _select_three(self, s):
        for i in range(3):
            s.dispatch(Tap(s.scene.marks[i].center))

    def test_merge_then_op_change_reaggregates_base(self):
        s = five_point_session()
        self._select_three(s)
        updates = s.dispatch(MenuCommand("aggregate.merge"))
        assert "sceneChanged" in kinds(updates)
        agg = s.view.aggregate_view
        assert agg is not None and agg.base_selection == {0, 1, 2}
        assert s.scene.chart_type.value == "bar"
        s.dispatch(MenuCommand("aggregate.op:median"))
        agg2 = s.view.aggregate_view
        assert agg2.spec.op.value == "median"
        assert agg2.base_selection == {0, 1, 2}  # remembered base selection

    def test_aggregate_by_field(self):
        s = five_point_session()
        self._select_three(s)
        s.dispatch(MenuCommand("aggregate.by:y"))
        assert s.view.aggregate_view.spec.group_by == "y"

    def test_aggregate_requires_selection(self):
        s = five_point_session()
        updates = s.dispatch(MenuCommand("aggregate.merge"))
        assert updates[0].payload["code"] == "AggregateRequiresSelection"

    def test_aggregate_undo_restores_base_view(self):
        s = five_point_session()
        initial = s.snapshot()
        self._select_three(s)
        selected = s.snapshot()
        s.dispatch(MenuCommand("aggregate.merge"))
        s.dispatch(MenuCommand("history.undo"))
        assert s.snapshot() == selected
        s.dispatch(MenuCommand("history.undo"))
        s.dispatch(MenuCommand("history.undo"))
        s.dispatch(MenuCommand("history.undo"))
        assert s.snapshot() == initial

    def test_unknown_op_is_error(self):
        s = five_point_session()
        self._select_three(s)
        updates = s.dispatch(MenuCommand("aggregate.op:mode"))
        assert updates[0].payload["code"] == "UnknownCommand"


class TestSnapshots:
    def test_snapshot_deterministic(self):
        s = five_point_session()
        assert s.snapshot() == s.snapshot()

    def test_inspection_excluded_from_snapshot(self):
        s = five_point_session()
        before = s.snapshot()
        feed(s, drag_events([(30, s.scene.height + 20), (250, s.scene.height + 20)], 600))
        assert s.inspection.has_active_line()
        assert s.snapshot() == before

    def test_focus_undo_byte_identical(self):
        s = five_point_session()
        initial = s.snapshot()
        s.dispatch(Tap(s.scene.marks[2].center))
        s.dispatch(DoubleTap((0.0, 0.0)))
        s.dispatch(MenuCommand("history.undo"))
        s.dispatch(MenuCommand("history.undo"))
        assert s.snapshot() == initial

    def test_exactly_one_push_per_gesture(self):
        s = five_point_session()
        rng = random.Random(3)
        gestures = []
        for _ in range(100):
            roll = rng.random()
            if roll < 0.4:
                gestures.append(Tap(s.scene.marks[rng.randrange(5)].center))
            elif roll < 0.55:
                gestures.append(DoubleTap((0.0, 0.0)))
            elif roll < 0.7:
                gestures.append(DragEnd(1, ((0, 0), (100, 0)), 1500.0, DragClass.SWIPE))
            elif roll < 0.85:
                gestures.append(MenuCommand("history.undo"))
            else:
                gestures.append(Shake())
        for g in gestures:
            before = len(s.history.past)
            s.dispatch(g)
            assert abs(len(s.history.past) - before) <= 1


class TestMenuState:
    def test_bootstrap_updates(self):
        s = five_point_session()
        updates = s.bootstrap_updates()
        assert kinds(updates) == ["sceneChanged", "selectionChanged", "menuStateChanged"]
        menu = updates[-1].payload
        assert menu == {"undo": False, "redo": False, "aggregate": False,
                        "joystickEnabled": False}

    def test_menu_follows_selection(self):
        s = five_point_session()
        s.bootstrap_updates()
        updates = s.dispatch(Tap(s.scene.marks[0].center))
        menus = [u for u in updates if u.kind == "menuStateChanged"]
        assert menus and menus[-1].payload["aggregate"] is True
        assert menus[-1].payload["undo"] is True


class TestConfig:
    def test_parse_config_file(self, tmp_path):
        path = tmp_path / "engine.cfg"
        path.write_text("# thresholds\ntapMaxMs = 120\nhitToleranceDip = 30 # fat finger\n"
                        "targetBins = 6\n", encoding="utf-8")
        cfg = load_config(path)
        assert cfg.gestures.tap_max_ms == 120.0
        assert cfg.hit_tolerance_dip == 30.0
        assert cfg.target_bins == 6

    def test_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "engine.cfg"
        path.write_text("tapMaxMs = 120\nbogusKey = 3\n", encoding="utf-8")
        with pytest.raises(SpecError):
            load_config(path)

    def test_session_honors_overrides(self):
        cfg = EngineConfig.from_overrides({"tapMaxMs": "50"})
        s = five_point_session(config=cfg)
        updates = feed(s, tap_events(s.scene.marks[0].center))  # 80 ms press: too slow now
        assert s.view.selection.row_ids == set()

    def test_margins_must_cover_axis_band(self):
        from touchviz.chart import Margins
        spec = replace(scatter_spec(), margins=Margins(left=20.0))
        with pytest.raises(SpecError):
            Session(spec, scatter_dataset([1, 2], [1, 2]))
