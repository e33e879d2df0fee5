"""touchviz: a deterministic, replayable touch/motion interaction engine
for exploratory data visualization (scatter, bar, multi-line).

Raw timestamped touch/motion events are recognized into gestures, routed to
selection / inspection / navigation / aggregation interactions, and every
discrete state change is undoable. Sessions are pure functions of their
event streams, so recorded traces replay to byte-identical snapshots.
"""

from .aggregate import aggregate_selection, default_aggregate_spec, nice_bins
from .chart import (ChartSpec, ChartType, Dataset, Domain, Encoding, FieldType,
                    Margins, Scale, ScaleDomains, compute_scale, compute_view_domains)
from .engine import EngineConfig, Session, ViewUpdate, initial_view_state, load_config
from .errors import TouchVizError
from .gesture import (GestureConfig, GestureRecognizer, RawInputEvent, RawKind,
                      flush_event, joystick_toggle, menu_command, motion_sample,
                      touch_down, touch_move, touch_up)
from .history import History
from .inspection import (InspectionState, even_step_index, joystick_map, tooltip_for,
                         update_inspection)
from .scene import HitTarget, MarkScene, Rect, hit_test, layout
from .selection import (axis_tap_select, focus, lasso_select, legend_select,
                        point_in_polygon, remove_selection, tap_select)
from .state import (AggOp, AggregateSpec, AggregateView, EMPTY_SELECTION, Provenance,
                    Selection, ViewState)
from .trace import (InputTrace, SnapshotLog, TraceHeader, load_chart_spec, load_dataset,
                    read_snapshot_log, read_trace, replay, replay_session, write_snapshot_log,
                    write_trace)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
