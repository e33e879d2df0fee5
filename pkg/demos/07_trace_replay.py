"""
Recording, replaying, and verifying interaction traces
======================================================

A trace is a header plus one JSON record per raw event. Replaying it against
a fresh engine reproduces the exact same canonical snapshots, byte for byte,
which is what the `touchviz replay` / `touchviz verify` CLI automates.
"""

import tempfile
from pathlib import Path

from touchviz import replay, write_trace
from touchviz.demo import build_traces, load_demo
from touchviz.trace import serialize_snapshot_log, serialize_trace

spec, schema, data = load_demo("unemployment")

# The bundled sample traces cover all thirteen interaction candidates.
traces = build_traces("unemployment")
print("bundled traces:", ", ".join(traces))

trace = traces["focus_double_tap"]
print("\nfirst trace lines:")
print("\n".join(serialize_trace(trace).splitlines()[:3]))

log1 = replay(trace, spec, data, snapshot_every="change")
log2 = replay(trace, spec, data, snapshot_every="change")
print("\nsnapshots recorded:", [e.event_index for e in log1.entries])
print("replay is deterministic:",
      serialize_snapshot_log(log1) == serialize_snapshot_log(log2))

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "session.trace"
    write_trace(trace, path)
    print("trace round-trips through disk:",
          serialize_trace(trace) == path.read_text(encoding="utf-8"))
