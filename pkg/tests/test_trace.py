import json

import pytest

from touchviz.chart import FieldType
from touchviz.demo import DATA_DIR, chart_spec_for, load_demo
from touchviz.engine import Session
from touchviz.errors import EmptyDataset, ParseError, ReplayError
from touchviz.gesture import (flush_event, joystick_toggle, menu_command, motion_sample,
                              touch_down, touch_up)
from touchviz.trace import (InputTrace, SnapshotEntry, SnapshotLog, TraceHeader,
                            event_from_dict, event_to_dict, first_divergence,
                            load_chart_spec, load_dataset, parse_snapshot_log,
                            parse_trace, replay, serialize_snapshot_log, serialize_trace,
                            write_chart_spec, write_trace, read_trace)

from helpers import double_tap_events, scatter_dataset, scatter_spec, tap_events


ALL_EVENT_KINDS = [
    touch_down(0, 1, 10.5, 20.25),
    touch_up(10, 1, 10.5, 20.25),
    motion_sample(20, 1.5, -2.25, 9.81),
    menu_command(30, "aggregate.op:median"),
    joystick_toggle(40),
    flush_event(50),
]


class TestEventSerialization:
    @pytest.mark.parametrize("event", ALL_EVENT_KINDS, ids=lambda e: e.kind.value)
    def test_round_trip(self, event):
        assert event_from_dict(event_to_dict(event)) == event

    def test_bad_kind(self):
        with pytest.raises(ParseError):
            event_from_dict({"t": 0, "kind": "teleport"})


class TestTraceFiles:
    def _trace(self):
        header = TraceHeader(chart_spec_ref="spec.json", dataset_ref="data.csv",
                             config_overrides={"tapMaxMs": "200"})
        return InputTrace(header=header, events=tuple(ALL_EVENT_KINDS))

    def test_round_trip_values(self):
        trace = self._trace()
        assert parse_trace(serialize_trace(trace)) == trace

    def test_round_trip_bytes(self, tmp_path):
        trace = self._trace()
        p1 = tmp_path / "a.trace"
        write_trace(trace, p1)
        p2 = tmp_path / "b.trace"
        write_trace(read_trace(p1), p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_timestamps_must_be_monotone(self):
        events = (touch_down(100, 1, 0, 0), flush_event(50))
        with pytest.raises(Exception):
            InputTrace(header=TraceHeader(), events=events)

    def test_unsupported_version(self):
        with pytest.raises(ParseError):
            parse_trace('{"v":99,"kind":"inputTrace"}\n')


class TestSnapshotLogFiles:
    def test_round_trip(self):
        log = SnapshotLog(entries=(
            SnapshotEntry(0, '{"a":1,"b":"0.5"}'),
            SnapshotEntry(3, '{"a":2,"b":"0.25"}'),
        ))
        text = serialize_snapshot_log(log)
        assert parse_snapshot_log(text) == log
        assert serialize_snapshot_log(parse_snapshot_log(text)) == text

    def test_first_divergence(self):
        a = SnapshotLog(entries=(SnapshotEntry(0, '{"s":1}'), SnapshotEntry(2, '{"s":2}')))
        b = SnapshotLog(entries=(SnapshotEntry(0, '{"s":1}'), SnapshotEntry(2, '{"s":3}')))
        assert first_divergence(a, a) is None
        assert first_divergence(a, b) == 2
        c = SnapshotLog(entries=(SnapshotEntry(0, '{"s":1}'),))
        assert first_divergence(a, c) == 2


class TestLoadDataset:
    def test_iris_fixture_shape(self):
        # independent recount straight off the bundled file
        raw_lines = (DATA_DIR / "iris.csv").read_text().strip().splitlines()
        spec, schema, data = load_demo("iris")
        assert len(data) == len(raw_lines) - 1 == 150
        assert len(data.schema) == len(raw_lines[0].split(",")) == 5

    def test_unparseable_cell_names_row_and_column(self, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("x,y\n1.0,2.0\nabc,3.0\n", encoding="utf-8")
        with pytest.raises(ParseError) as exc:
            load_dataset(p, {"x": FieldType.QUANTITATIVE, "y": FieldType.QUANTITATIVE})
        assert exc.value.row == 2 and exc.value.column == "x"

    def test_empty_file(self, tmp_path):
        p = tmp_path / "empty.csv"
        p.write_text("x,y\n", encoding="utf-8")
        with pytest.raises(EmptyDataset):
            load_dataset(p, {"x": FieldType.QUANTITATIVE, "y": FieldType.QUANTITATIVE})

    def test_missing_column(self, tmp_path):
        p = tmp_path / "short.csv"
        p.write_text("x\n1.0\n", encoding="utf-8")
        with pytest.raises(ParseError):
            load_dataset(p, {"x": FieldType.QUANTITATIVE, "y": FieldType.QUANTITATIVE})

    def test_temporal_parsing(self, tmp_path):
        p = tmp_path / "dates.csv"
        p.write_text("d,v\n1970-01-02,1.0\n1970-01-03,2.0\n", encoding="utf-8")
        data = load_dataset(p, {"d": FieldType.TEMPORAL, "v": FieldType.QUANTITATIVE})
        assert data.rows[0]["d"] == 86_400_000


class TestChartSpecFiles:
    def test_round_trip(self, tmp_path):
        spec, schema = chart_spec_for("unemployment")
        p = tmp_path / "spec.json"
        write_chart_spec(spec, schema, p)
        spec2, schema2 = load_chart_spec(p)
        assert spec2 == spec and schema2 == schema

    def test_bad_spec(self, tmp_path):
        p = tmp_path / "spec.json"
        p.write_text(json.dumps({"chartType": "pie"}), encoding="utf-8")
        with pytest.raises(ParseError):
            load_chart_spec(p)


class TestReplay:
    def _simple(self):
        data = scatter_dataset([1, 2, 3, 4, 5], [1, 2, 3, 4, 5])
        return scatter_spec(), data

    def test_empty_trace_single_initial_snapshot(self):
        spec, data = self._simple()
        trace = InputTrace(header=TraceHeader(), events=())
        log = replay(trace, spec, data, "change")
        assert len(log.entries) == 1
        assert log.entries[0] == SnapshotEntry(0, Session(spec, data).snapshot())

    def test_focus_then_undo_final_equals_initial(self):
        spec, data = self._simple()
        s = Session(spec, data)
        pos = s.scene.marks[2].center
        events = (tap_events(pos) + double_tap_events((5.0, 5.0), t0=2000)
                  + [menu_command(4000, "history.undo"), menu_command(4200, "history.undo"),
                     menu_command(4400, "history.undo")])
        trace = InputTrace(header=TraceHeader(), events=tuple(events))
        log = replay(trace, spec, data, "final")
        assert log.entries[-1].snapshot == Session(spec, data).snapshot()

    def test_policies(self):
        spec, data = self._simple()
        pos = Session(spec, data).scene.marks[0].center
        trace = InputTrace(header=TraceHeader(), events=tuple(tap_events(pos)))
        n = len(trace.events)
        assert len(replay(trace, spec, data, "event").entries) == n + 1
        assert len(replay(trace, spec, data, "final").entries) == 1
        change = replay(trace, spec, data, "change").entries
        assert 1 < len(change) <= n + 1
        indices = [e.event_index for e in change]
        assert indices == sorted(set(indices))

    def test_rerun_byte_identical(self):
        spec, data = self._simple()
        pos = Session(spec, data).scene.marks[1].center
        trace = InputTrace(header=TraceHeader(), events=tuple(tap_events(pos)))
        a = serialize_snapshot_log(replay(trace, spec, data, "event"))
        b = serialize_snapshot_log(replay(trace, spec, data, "event"))
        assert a == b

    def test_protocol_error_halts_with_event_index(self):
        spec, data = self._simple()
        trace = InputTrace(header=TraceHeader(),
                           events=(flush_event(0), touch_up(10, 3, 1, 1)))
        with pytest.raises(ReplayError) as exc:
            replay(trace, spec, data, "change")
        assert exc.value.event_index == 2

    def test_header_overrides_change_outcome(self):
        spec, data = self._simple()
        pos = Session(spec, data).scene.marks[0].center
        events = tuple(tap_events(pos))
        plain = replay(InputTrace(header=TraceHeader(), events=events), spec, data, "final")
        strict = replay(InputTrace(
            header=TraceHeader(config_overrides={"tapMaxMs": "50"}), events=events),
            spec, data, "final")
        assert plain.entries[-1].snapshot != strict.entries[-1].snapshot
