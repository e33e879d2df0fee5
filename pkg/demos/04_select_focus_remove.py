"""
Selection, focus (zoom + inclusive filter), and remove (exclusive filter)
=========================================================================

Taps toggle marks or legend groups, lassos replace the selection, double tap
zooms to the selection, and a quick swipe removes it while keeping the scale
domains fixed for context.
"""

from touchviz.demo import load_demo
from touchviz.engine import Session
from touchviz.gesture import DoubleTap, DragClass, DragEnd, Tap

spec, schema, data = load_demo("iris")
session = Session(spec, data)
scene = session.scene

# Tap a mark, then tap the setosa legend entry to add the whole group.
session.dispatch(Tap(scene.marks[75].center))
legend = scene.legend[0]
session.dispatch(Tap((legend.bounds.x + 45.0, legend.bounds.y + 2.0)))
print("selected rows:", len(session.view.selection.row_ids),
      "via", session.view.selection.provenance.value)

# Double tap focuses: only the selection stays, domains rescale around it.
before = session.view.scale_domains.x.values
session.dispatch(DoubleTap((0.0, 0.0)))
print("visible after focus:", len(session.view.visible_row_ids))
print("x domain:", before, "->", session.view.scale_domains.x.values)

# Lasso a corner of the focused view and swipe it away; domains stay put.
scene = session.scene
xs = sorted(m.center[0] for m in scene.marks)
cut = xs[len(xs) // 3]
corner = ((-10.0, -10.0), (cut, -10.0), (cut, scene.height + 10.0),
          (-10.0, scene.height + 10.0))
session.dispatch(DragEnd(1, corner, 90.0, DragClass.LASSO))
print("lassoed:", len(session.view.selection.row_ids))
domains = session.view.scale_domains
session.dispatch(DragEnd(1, ((0.0, 0.0), (200.0, 0.0)), 1600.0, DragClass.SWIPE))
print("visible after remove:", len(session.view.visible_row_ids),
      "| domains unchanged:", session.view.scale_domains == domains)
