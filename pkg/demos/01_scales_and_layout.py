"""
Scales, layout, and hit-testing
===============================

The chart core turns a declarative spec plus typed rows into a MarkScene:
positioned marks, axis hit bands, and a legend. Everything is in
device-independent pixels with the plot spanning [0,w] x [0,h].
"""

from touchviz import Session, compute_scale, FieldType, hit_test
from touchviz.demo import load_demo

spec, schema, data = load_demo("iris")
session = Session(spec, data)
scene = session.scene

print(f"{spec.chart_type.value} chart, {len(scene.marks)} marks, "
      f"{len(scene.legend)} legend entries")

# Quantitative domains get 5% padding so marks never sit on the plot edge.
scale = compute_scale(FieldType.QUANTITATIVE, [2.0, 10.0], (0.0, 300.0))
print("domain for values [2, 10]:", scale.domain)          # (1.6, 10.4)
print("round trip of 7.3:", scale.invert(scale.apply(7.3)))

# Hit-testing resolves a fat-finger tap: marks beat legend beat axis bands.
mark = scene.marks[0]
near = (mark.center[0] + 9.0, mark.center[1] - 7.0)
print("tap near a mark:", hit_test(scene, near, tolerance_dip=24.0))
print("tap in the left margin:", hit_test(scene, (-30.0, 180.0), 24.0))
print("tap below the plot:", hit_test(scene, (180.0, spec.height + 20.0), 24.0))
