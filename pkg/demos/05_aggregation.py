"""
Menu-driven aggregation with automatic nice binning
===================================================

Aggregating an active selection produces a derived bar chart. Quantitative
group-by fields bin automatically on {1,2,5} x 10^k steps; the menu can then
regroup by another field or swap the operator, always re-aggregating the
remembered base selection.
"""

from touchviz import nice_bins
from touchviz.demo import load_demo
from touchviz.engine import Session
from touchviz.gesture import DragClass, DragEnd, MenuCommand

print("nice bins for [0.3, 4.1]:", nice_bins([0.3, 4.1], 10))

spec, schema, data = load_demo("iris")
session = Session(spec, data)
scene = session.scene

# Lasso everything, then merge: defaults group by x (binned) with mean of y.
hull = ((-10.0, -10.0), (scene.width + 10, -10.0),
        (scene.width + 10, scene.height + 10), (-10.0, scene.height + 10))
session.dispatch(DragEnd(1, hull, 80.0, DragClass.LASSO))
session.dispatch(MenuCommand("aggregate.merge"))

agg_spec, agg_data = session.effective()
print(f"derived {agg_spec.chart_type.value} chart, {len(agg_data)} groups:")
for row in agg_data.rows:
    print("  ", row)

# Swap the operator; the remembered base selection is re-aggregated.
session.dispatch(MenuCommand("aggregate.op:max"))
_, agg_data = session.effective()
print("after op:max ->", agg_data.rows[0])

# Regroup by species instead: nominal group-by skips binning.
session.dispatch(MenuCommand("aggregate.by:species"))
_, agg_data = session.effective()
print("grouped by species:")
for row in agg_data.rows:
    print("  ", row)
