import random

import pytest

from touchviz.chart import ChartSpec, ChartType, Dataset, Encoding, FieldType
from touchviz.engine import initial_view_state
from touchviz.scene import AxisGeometry, Mark, MarkScene, Rect, hit_test, layout
from touchviz.chart import Scale

from helpers import scatter_dataset, scatter_spec


def make_view(spec, data, row_ids=None):
    view = initial_view_state(spec, data)
    if row_ids is not None:
        from dataclasses import replace
        view = replace(view, visible_row_ids=frozenset(row_ids))
    return view


class TestLayout:
    def test_scatter_one_point_per_row(self, iris):
        spec, _, data = iris
        scene = layout(spec, data, make_view(spec, data))
        assert len(scene.marks) == len(data)
        assert all(m.shape == "point" and len(m.row_ids) == 1 for m in scene.marks)

    def test_bar_one_rect_per_category(self):
        data = Dataset([{"c": "A", "v": 2.0}, {"c": "B", "v": 3.0},
                        {"c": "A", "v": 4.0}, {"c": "C", "v": 1.0}],
                       {"c": FieldType.NOMINAL, "v": FieldType.QUANTITATIVE})
        spec = ChartSpec(ChartType.BAR, x=Encoding("c", FieldType.NOMINAL),
                         y=Encoding("v", FieldType.QUANTITATIVE))
        scene = layout(spec, data, make_view(spec, data))
        assert len(scene.marks) == 3
        by_cat = {m.x_value: m for m in scene.marks}
        assert by_cat["A"].row_ids == (0, 2)
        assert by_cat["A"].y_value == 6.0  # bar height aggregates by sum

    def test_multiline_filtered_series_keeps_legend_entry(self):
        rows = []
        for series, ys in (("a", [1.0, 2.0, 3.0]), ("b", [2.0, 1.0, 4.0])):
            for i, y in enumerate(ys):
                rows.append({"s": series, "t": i * 86_400_000, "v": y})
        data = Dataset(rows, {"s": FieldType.NOMINAL, "t": FieldType.TEMPORAL,
                              "v": FieldType.QUANTITATIVE})
        spec = ChartSpec(ChartType.MULTILINE, x=Encoding("t", FieldType.TEMPORAL),
                         y=Encoding("v", FieldType.QUANTITATIVE),
                         color=Encoding("s", FieldType.NOMINAL))
        # independent oracle: filter rows of series "b", then recount groups
        keep = [rid for rid, row in enumerate(rows) if row["s"] != "b"]
        scene = layout(spec, data, make_view(spec, data, keep))
        assert {m.series for m in scene.marks} == {"a"}
        assert len(scene.marks) == len(keep)
        legend = {e.category: e.filtered for e in scene.legend}
        assert legend == {"a": False, "b": True}

    def test_partition_invariant(self, iris):
        spec, _, data = iris
        rng = random.Random(7)
        for _ in range(20):
            keep = rng.sample(range(len(data)), rng.randint(1, len(data)))
            scene = layout(spec, data, make_view(spec, data, keep))
            seen: list[int] = []
            for m in scene.marks:
                seen.extend(m.row_ids)
            assert sorted(seen) == sorted(keep)  # every visible row in exactly one mark

    def test_mark_ids_unique_and_dense(self, population):
        spec, _, data = population
        scene = layout(spec, data, make_view(spec, data))
        assert [m.mark_id for m in scene.marks] == list(range(len(scene.marks)))

    def test_encoding_mismatch_raises(self):
        data = scatter_dataset([1, 2], [3, 4])
        bad = ChartSpec(ChartType.SCATTER, x=Encoding("missing", FieldType.QUANTITATIVE),
                        y=Encoding("y", FieldType.QUANTITATIVE))
        from touchviz.errors import SpecError
        with pytest.raises(SpecError):
            layout(bad, data, make_view(scatter_spec(), data))


def _hand_scene(marks, width=360.0, height=360.0) -> MarkScene:
    xscale = Scale("linear", (0.0, 1.0), (0.0, width))
    yscale = Scale("linear", (0.0, 1.0), (height, 0.0))
    return MarkScene(
        chart_type=ChartType.SCATTER, width=width, height=height, marks=tuple(marks),
        axis_x=AxisGeometry(band=Rect(0.0, height, width, 48.0), scale=xscale),
        axis_y=AxisGeometry(band=Rect(-48.0, 0.0, 48.0, height), scale=yscale),
        encodings={"x": {"field": "x", "fieldType": "quantitative"},
                   "y": {"field": "y", "fieldType": "quantitative"}})


def _mark(mid, center, rows=None):
    r = 4.0
    return Mark(mark_id=mid, row_ids=tuple(rows or (mid,)), shape="point", center=center,
                bounds=Rect(center[0] - r, center[1] - r, 2 * r, 2 * r),
                x_value=center[0], y_value=center[1])


class TestHitTest:
    def test_mark_within_tolerance(self):
        scene = _hand_scene([_mark(0, (50.0, 50.0))])
        hit = hit_test(scene, (60.0, 58.0), 24.0)  # distance ~12.8
        assert hit.kind == "mark" and hit.mark_id == 0

    def test_tie_goes_to_smaller_mark_id(self):
        scene = _hand_scene([_mark(0, (40.0, 50.0)), _mark(1, (60.0, 50.0))])
        hit = hit_test(scene, (50.0, 50.0), 24.0)  # both at distance 10
        assert hit.mark_id == 0

    def test_axis_bands(self):
        scene = _hand_scene([_mark(0, (200.0, 200.0))])
        assert hit_test(scene, (-30.0, 200.0), 24.0).kind == "axisY"
        assert hit_test(scene, (180.0, 380.0), 24.0).kind == "axisX"

    def test_background(self):
        scene = _hand_scene([_mark(0, (200.0, 200.0))])
        assert hit_test(scene, (100.0, 100.0), 24.0).kind == "background"

    def test_mark_priority_over_axis(self):
        scene = _hand_scene([_mark(0, (10.0, 370.0))])  # sits inside the x band
        assert hit_test(scene, (10.0, 370.0), 24.0).kind == "mark"

    def test_total_and_deterministic(self):
        scene = _hand_scene([_mark(0, (50.0, 50.0)), _mark(1, (51.0, 50.0))])
        rng = random.Random(3)
        for _ in range(200):
            pos = (rng.uniform(-100, 500), rng.uniform(-100, 500))
            assert hit_test(scene, pos, 24.0) == hit_test(scene, pos, 24.0)

    def test_bounds_containment_counts(self):
        # center far away but fat bounds contain the point
        m = Mark(mark_id=0, row_ids=(0,), shape="rect", center=(50.0, 10.0),
                 bounds=Rect(40.0, 0.0, 20.0, 300.0), x_value="A", y_value=1.0)
        scene = _hand_scene([m])
        assert hit_test(scene, (45.0, 250.0), 4.0).kind == "mark"
