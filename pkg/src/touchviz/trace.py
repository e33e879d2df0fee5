"""Input-trace serialization, dataset/spec loading, and deterministic replay.

Traces and snapshot logs are UTF-8 text with one JSON record per line: a
header line followed by one record per event. Diffable in review and
append-friendly for the UI recorder. All numbers in snapshot logs pass
through the canonical formatter, so equal replays are byte-equal files.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .canon import canonical_json, parse_temporal
from .chart import ChartSpec, ChartType, Dataset, Encoding, FieldType, Margins
from .engine import EngineConfig, Session
from .errors import EmptyDataset, ParseError, ReplayError, SpecError
from .gesture import RawInputEvent, RawKind

TRACE_VERSION = 1
SNAPSHOT_POLICIES = ("change", "event", "final")


@dataclass(frozen=True)
class TraceHeader:
    version: int = TRACE_VERSION
    chart_spec_ref: str | None = None
    dataset_ref: str | None = None
    config_overrides: dict = field(default_factory=dict)


@dataclass(frozen=True)
class InputTrace:
    header: TraceHeader
    events: tuple[RawInputEvent, ...]

    def __post_init__(self):
        last = -math.inf
        for i, e in enumerate(self.events):
            if e.t < last:
                raise SpecError(f"trace event {i}: timestamp {e.t} regresses below {last}")
            last = e.t


@dataclass(frozen=True)
class SnapshotEntry:
    event_index: int  # number of events consumed when the snapshot was taken
    snapshot: str  # canonical JSON


@dataclass(frozen=True)
class SnapshotLog:
    entries: tuple[SnapshotEntry, ...]

    def __post_init__(self):
        indices = [e.event_index for e in self.entries]
        if indices != sorted(set(indices)):
            raise SpecError("snapshot log eventIndex values must be strictly increasing")


# ------------------------------------------------------------------ events

def event_to_dict(e: RawInputEvent) -> dict:
    d: dict = {"t": e.t, "kind": e.kind.value}
    if e.pointer_id is not None:
        d["pointerId"] = e.pointer_id
    if e.pos is not None:
        d["x"], d["y"] = e.pos
    if e.accel is not None:
        d["ax"], d["ay"], d["az"] = e.accel
    if e.command is not None:
        d["command"] = e.command
    return d


def event_from_dict(d: dict) -> RawInputEvent:
    try:
        kind = RawKind(d["kind"])
        t = d["t"]
    except (KeyError, ValueError) as exc:
        raise ParseError(f"bad event record {d!r}: {exc}") from exc
    pos = (d["x"], d["y"]) if "x" in d else None
    accel = (d["ax"], d["ay"], d["az"]) if "ax" in d else None
    return RawInputEvent(t=t, kind=kind, pointer_id=d.get("pointerId"),
                         pos=pos, accel=accel, command=d.get("command"))


# ------------------------------------------------------------------ traces

def serialize_trace(trace: InputTrace) -> str:
    header = {
        "v": trace.header.version,
        "kind": "inputTrace",
        "chartSpecRef": trace.header.chart_spec_ref,
        "datasetRef": trace.header.dataset_ref,
        "configOverrides": trace.header.config_overrides,
    }
    lines = [json.dumps(header, sort_keys=True, separators=(",", ":"))]
    lines.extend(json.dumps(event_to_dict(e), sort_keys=True, separators=(",", ":"))
                 for e in trace.events)
    return "\n".join(lines) + "\n"


def parse_trace(text: str) -> InputTrace:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty trace file")
    header_obj = json.loads(lines[0])
    version = header_obj.get("v")
    if version != TRACE_VERSION:
        raise ParseError(f"unsupported trace version {version!r}")
    header = TraceHeader(version=version,
                         chart_spec_ref=header_obj.get("chartSpecRef"),
                         dataset_ref=header_obj.get("datasetRef"),
                         config_overrides=header_obj.get("configOverrides") or {})
    events = tuple(event_from_dict(json.loads(ln)) for ln in lines[1:])
    return InputTrace(header=header, events=events)


def write_trace(trace: InputTrace, path) -> None:
    Path(path).write_text(serialize_trace(trace), encoding="utf-8")


def read_trace(path) -> InputTrace:
    return parse_trace(Path(path).read_text(encoding="utf-8"))


# ------------------------------------------------------------- snapshot log

def serialize_snapshot_log(log: SnapshotLog) -> str:
    lines = [json.dumps({"v": TRACE_VERSION, "kind": "snapshotLog"},
                        sort_keys=True, separators=(",", ":"))]
    for entry in log.entries:
        obj = {"eventIndex": entry.event_index, "snapshot": json.loads(entry.snapshot)}
        lines.append(canonical_json(obj))
    return "\n".join(lines) + "\n"


def parse_snapshot_log(text: str) -> SnapshotLog:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty snapshot log")
    header = json.loads(lines[0])
    if header.get("v") != TRACE_VERSION or header.get("kind") != "snapshotLog":
        raise ParseError("not a snapshot log file")
    entries = []
    for ln in lines[1:]:
        obj = json.loads(ln)
        entries.append(SnapshotEntry(event_index=obj["eventIndex"],
                                     snapshot=canonical_json(obj["snapshot"])))
    return SnapshotLog(entries=tuple(entries))


def write_snapshot_log(log: SnapshotLog, path) -> None:
    Path(path).write_text(serialize_snapshot_log(log), encoding="utf-8")


def read_snapshot_log(path) -> SnapshotLog:
    return parse_snapshot_log(Path(path).read_text(encoding="utf-8"))


# ------------------------------------------------------------ data loading

def load_dataset(path, schema: dict[str, FieldType]) -> Dataset:
    """CSV with a header row, parsed per the declared schema; rowIds in file order."""
    schema = {name: FieldType(ft) for name, ft in schema.items()}
    path = Path(path)
    with path.open(encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise EmptyDataset(f"{path}: no header row")
        missing = set(schema) - set(reader.fieldnames)
        if missing:
            raise ParseError(f"{path}: missing column(s) {sorted(missing)}",
                             column=sorted(missing)[0])
        rows: list[dict] = []
        for lineno, record in enumerate(reader, 1):
            row: dict = {}
            for name, ft in schema.items():
                cell = record[name]
                try:
                    if ft is FieldType.NOMINAL:
                        row[name] = cell
                    elif ft is FieldType.QUANTITATIVE:
                        row[name] = float(cell)
                    else:
                        row[name] = parse_temporal(cell)
                except ValueError as exc:
                    raise ParseError(
                        f"{path}: row {lineno}, column {name!r}: cannot parse {cell!r}",
                        row=lineno, column=name) from exc
            rows.append(row)
    if not rows:
        raise EmptyDataset(f"{path}: no data rows")
    return Dataset(rows, schema)


def chart_spec_to_dict(spec: ChartSpec, schema: dict[str, FieldType]) -> dict:
    encodings = {"x": {"field": spec.x.field, "fieldType": spec.x.field_type.value},
                 "y": {"field": spec.y.field, "fieldType": spec.y.field_type.value}}
    if spec.color is not None:
        encodings["color"] = {"field": spec.color.field,
                              "fieldType": spec.color.field_type.value}
    return {
        "v": TRACE_VERSION,
        "chartType": spec.chart_type.value,
        "width": spec.width,
        "height": spec.height,
        "margins": {"top": spec.margins.top, "right": spec.margins.right,
                    "bottom": spec.margins.bottom, "left": spec.margins.left},
        "encodings": encodings,
        "schema": {name: ft.value for name, ft in schema.items()},
    }


def chart_spec_from_dict(obj: dict) -> tuple[ChartSpec, dict[str, FieldType]]:
    try:
        enc = obj["encodings"]

        def encoding(axis: str) -> Encoding:
            return Encoding(enc[axis]["field"], FieldType(enc[axis]["fieldType"]))

        margins = obj.get("margins") or {}
        spec = ChartSpec(
            chart_type=ChartType(obj["chartType"]),
            x=encoding("x"),
            y=encoding("y"),
            color=encoding("color") if "color" in enc else None,
            width=float(obj.get("width", 360)),
            height=float(obj.get("height", 360)),
            margins=Margins(**{k: float(v) for k, v in margins.items()}) if margins else Margins())
        schema = {name: FieldType(ft) for name, ft in (obj.get("schema") or {}).items()}
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseError(f"bad chart spec: {exc}") from exc
    return spec, schema


def write_chart_spec(spec: ChartSpec, schema: dict[str, FieldType], path) -> None:
    Path(path).write_text(json.dumps(chart_spec_to_dict(spec, schema),
                                     indent=2, sort_keys=True) + "\n", encoding="utf-8")


def load_chart_spec(path) -> tuple[ChartSpec, dict[str, FieldType]]:
    return chart_spec_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


# ---------------------------------------------------------------- replay

def replay(trace: InputTrace, spec: ChartSpec, data: Dataset,
           snapshot_every: str = "change",
           config: EngineConfig | None = None) -> SnapshotLog:
    """Feed a fresh engine the trace and record snapshots per the policy.

    Policies: "event" snapshots after every event, "change" after events
    whose snapshot differs (plus the initial one), "final" only at the end.
    eventIndex counts events consumed, so the initial snapshot is index 0.
    """
    if snapshot_every not in SNAPSHOT_POLICIES:
        raise ValueError(f"snapshot policy must be one of {SNAPSHOT_POLICIES}")
    if config is None and trace.header.config_overrides:
        config = EngineConfig.from_overrides(trace.header.config_overrides)
    session = Session(spec, data, config)
    entries: list[SnapshotEntry] = []
    last = session.snapshot()
    if snapshot_every != "final":
        entries.append(SnapshotEntry(0, last))
    for index, event in enumerate(trace.events, 1):
        updates = session.process_raw(event)
        for update in updates:
            if update.kind == "error" and update.payload.get("code") == "ProtocolError":
                raise ReplayError(f"event {index}: {update.payload['message']}",
                                  event_index=index)
        if snapshot_every == "event":
            entries.append(SnapshotEntry(index, session.snapshot()))
        elif snapshot_every == "change":
            snap = session.snapshot()
            if snap != last:
                entries.append(SnapshotEntry(index, snap))
                last = snap
    if snapshot_every == "final":
        entries.append(SnapshotEntry(len(trace.events), session.snapshot()))
    return SnapshotLog(entries=tuple(entries))


def replay_session(trace: InputTrace, spec: ChartSpec, data: Dataset,
                   config: EngineConfig | None = None) -> Session:
    """Replay and hand back the finished session (for coverage checks)."""
    if config is None and trace.header.config_overrides:
        config = EngineConfig.from_overrides(trace.header.config_overrides)
    session = Session(spec, data, config)
    for index, event in enumerate(trace.events, 1):
        updates = session.process_raw(event)
        for update in updates:
            if update.kind == "error" and update.payload.get("code") == "ProtocolError":
                raise ReplayError(f"event {index}: {update.payload['message']}",
                                  event_index=index)
    return session


def first_divergence(a: SnapshotLog, b: SnapshotLog) -> int | None:
    """Event index where two logs first disagree, or None when identical."""
    for ea, eb in zip(a.entries, b.entries):
        if ea.event_index != eb.event_index or ea.snapshot != eb.snapshot:
            return min(ea.event_index, eb.event_index)
    if len(a.entries) != len(b.entries):
        longer = a if len(a.entries) > len(b.entries) else b
        return longer.entries[min(len(a.entries), len(b.entries))].event_index
    return None
