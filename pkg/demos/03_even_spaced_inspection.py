"""
Even-spaced inspection and the one-handed joystick
==================================================

Dragging along an axis divides the inspection range into one equal step per
distinct value, so neighboring marks never flicker. A second finger (or the
joystick's y direction) refines within the first line's group, which keeps
the intersection non-empty by construction.
"""

from touchviz import Session, tooltip_for
from touchviz.demo import load_demo
from touchviz.inspection import (INITIAL_INSPECTION, joystick_map, make_thumb_box,
                                 update_inspection_fraction)
from touchviz.scene import Rect

spec, schema, data = load_demo("iris")
session = Session(spec, data)
scene = session.scene

# Sweep the x line across its range: step indices advance one group at a time.
state = INITIAL_INSPECTION
steps = []
for i in range(11):
    state = update_inspection_fraction(scene, state, "x", i / 10)
    steps.append((round(i / 10, 1), state.line_x.step_index, state.line_x.snapped_value))
print("fraction -> (step, snapped x):")
for fraction, idx, value in steps:
    print(f"  {fraction:>3} -> ({idx:2d}, {value})")

# Add the y line: it steps only over marks in the x line's current group.
state = update_inspection_fraction(scene, state, "x", 0.5)
state = update_inspection_fraction(scene, state, "y", 0.5)
print("refined to", len(state.active_mark_ids), "mark(s)")
print("tooltip:", tooltip_for(scene, data, state.active_mark_ids))

# Joystick mode maps a 40%-of-plot thumb box onto the full fraction space.
viewport = Rect(-56.0, -32.0, spec.width + 72.0, spec.height + 88.0)
box = make_thumb_box((180.0, 180.0), viewport, spec.width, spec.height)
print("thumb box:", box)
print("thumb at box center:", joystick_map((180.0, 180.0), (180.0, 180.0), box))
print("thumb pushed right+up:", joystick_map((180.0, 180.0), (box.x + box.w, box.y), box))
