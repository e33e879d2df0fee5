"""Menu-driven aggregation of the active selection, with automatic binning.

Quantitative and temporal group-by fields are binned on readable {1,2,5}x10^k
steps; the result is always a derived bar chart over the present groups.
"""

from __future__ import annotations

import math
import statistics

from .canon import fmt_number, fmt_temporal
from .chart import (ChartSpec, ChartType, Dataset, Encoding, FieldType,
                    compute_view_domains)
from .errors import AggregateRequiresSelection, SpecError
from .state import AggOp, AggregateSpec, AggregateView, EMPTY_SELECTION, ViewState

NICE_MANTISSAS = (1.0, 2.0, 5.0)
DEFAULT_TARGET_BINS = 10


def default_aggregate_spec(spec: ChartSpec, target_bins: int = DEFAULT_TARGET_BINS) -> AggregateSpec:
    """Defaults keyed off the x encoding: group by x, mean of y (count if y is not numeric)."""
    op = AggOp.MEAN if spec.y.field_type is FieldType.QUANTITATIVE else AggOp.COUNT
    return AggregateSpec(group_by=spec.x.field, op=op, measure=spec.y.field,
                         target_bins=target_bins)


def nice_step(raw: float) -> float:
    """Smallest value in {1,2,5} x 10^k that is >= raw."""
    if raw <= 0:
        raise ValueError("raw step must be positive")
    k = math.floor(math.log10(raw))
    for exp in (k, k + 1):
        for m in NICE_MANTISSAS:
            step = m * 10.0 ** exp
            if step >= raw:
                return step
    raise AssertionError("unreachable")


def nice_bins(values: list[float], target_bins: int = DEFAULT_TARGET_BINS) -> list[tuple[float, float]]:
    """[lo, hi) bins on nice-step edges covering [min, max]; the last bin is closed.

    Edges sit on integer multiples of the step, so at most target_bins + 1
    bins are ever produced.
    """
    if not values:
        raise ValueError("cannot bin zero values")
    mn, mx = min(values), max(values)
    if mn == mx:
        return [(mn, mx)]
    step = nice_step((mx - mn) / target_bins)
    i0 = math.floor(mn / step)
    if i0 * step > mn:  # division can round up (or underflow to -0.0) near zero
        i0 -= 1
    edges = [i0 * step]
    i = i0
    while edges[-1] < mx:
        i += 1
        edges.append(i * step)
    return [(edges[j], edges[j + 1]) for j in range(len(edges) - 1)]


def bin_index(v: float, bins: list[tuple[float, float]]) -> int:
    """Index of the [lo, hi) bin containing v (last bin closed)."""
    lo0 = bins[0][0]
    step = bins[0][1] - bins[0][0]
    if step <= 0:
        return 0
    idx = int(math.floor((v - lo0) / step))
    idx = min(max(idx, 0), len(bins) - 1)
    # float-guard: nudge across an edge if the division rounded the wrong way
    if idx > 0 and v < bins[idx][0]:
        idx -= 1
    elif idx < len(bins) - 1 and v >= bins[idx][1]:
        idx += 1
    return idx


def bin_label(lo: float, hi: float, field_type: FieldType) -> str:
    fmt = fmt_temporal if field_type is FieldType.TEMPORAL else fmt_number
    if lo == hi:
        return fmt(lo)
    return f"[{fmt(lo)}, {fmt(hi)})"


def _apply_op(op: AggOp, values: list[float]) -> float:
    if op is AggOp.COUNT:
        return float(len(values))
    if op is AggOp.SUM:
        return math.fsum(values)
    if op is AggOp.MEAN:
        return math.fsum(values) / len(values)
    if op is AggOp.MIN:
        return min(values)
    if op is AggOp.MAX:
        return max(values)
    if op is AggOp.MEDIAN:
        return float(statistics.median(values))
    raise SpecError(f"unknown aggregate op {op!r}")


def build_aggregate(data: Dataset, row_ids, agg_spec: AggregateSpec,
                    base_spec: ChartSpec) -> tuple[Dataset, ChartSpec]:
    """Group the given rows and build the derived bar-chart dataset + spec."""
    if agg_spec.group_by not in data.schema:
        raise SpecError(f"groupBy field {agg_spec.group_by!r} not in schema")
    group_type = data.schema[agg_spec.group_by]
    if agg_spec.op is not AggOp.COUNT:
        if data.schema.get(agg_spec.measure) is not FieldType.QUANTITATIVE:
            raise SpecError(f"measure {agg_spec.measure!r} must be quantitative for {agg_spec.op.value}")

    rids = sorted(row_ids)
    keys = [data.rows[rid][agg_spec.group_by] for rid in rids]

    groups: dict[str, list[int]] = {}
    if group_type is FieldType.NOMINAL:
        for rid, key in zip(rids, keys):
            groups.setdefault(key, []).append(rid)
    else:
        bins = nice_bins(keys, agg_spec.target_bins)
        labels = [bin_label(lo, hi, group_type) for lo, hi in bins]
        for rid, key in zip(rids, keys):
            groups.setdefault(labels[bin_index(key, bins)], []).append(rid)
        # empty bins are dropped; order groups by bin position
        groups = {lbl: groups[lbl] for lbl in labels if lbl in groups}

    value_field = "count" if agg_spec.op is AggOp.COUNT else f"{agg_spec.op.value}_{agg_spec.measure}"
    rows = []
    for label, members in groups.items():
        if agg_spec.op is AggOp.COUNT:
            value = float(len(members))
        else:
            value = _apply_op(agg_spec.op, [data.rows[rid][agg_spec.measure] for rid in members])
        rows.append({agg_spec.group_by: str(label), value_field: value})

    derived = Dataset(rows, {agg_spec.group_by: FieldType.NOMINAL,
                             value_field: FieldType.QUANTITATIVE})
    derived_spec = ChartSpec(
        chart_type=ChartType.BAR,
        x=Encoding(agg_spec.group_by, FieldType.NOMINAL),
        y=Encoding(value_field, FieldType.QUANTITATIVE),
        width=base_spec.width, height=base_spec.height, margins=base_spec.margins)
    return derived, derived_spec


def aggregate_selection(data: Dataset, base_spec: ChartSpec, view: ViewState,
                        selection_row_ids, agg_spec: AggregateSpec,
                        ) -> tuple[Dataset, ChartSpec, ViewState]:
    """Aggregate the selected base rows into a derived bar-chart view state."""
    base = frozenset(selection_row_ids)
    if not base:
        raise AggregateRequiresSelection("aggregate needs an active selection")
    derived, derived_spec = build_aggregate(data, base, agg_spec, base_spec)
    domains = compute_view_domains(derived_spec, derived, derived.row_ids)
    new_view = ViewState(
        visible_row_ids=frozenset(derived.row_ids),
        scale_domains=domains,
        selection=EMPTY_SELECTION,
        aggregate_view=AggregateView(spec=agg_spec, base_selection=base))
    return derived, derived_spec, new_view
