"""Immutable view-state values: selection, aggregation spec, and ViewState.

ViewState is the discrete, undoable unit of the system. Anything transient
(inspection lines, drag paths, recognizer internals) stays out of it.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from .chart import ScaleDomains
from .errors import SpecError


class Provenance(str, Enum):
    TAP = "tap"
    LEGEND = "legend"
    LASSO = "lasso"
    AXIS_TAP = "axisTap"
    NONE = "none"


@dataclass(frozen=True)
class Selection:
    row_ids: frozenset[int]
    provenance: Provenance

    def __post_init__(self):
        if (self.provenance is Provenance.NONE) != (not self.row_ids):
            raise SpecError("provenance must be 'none' exactly when the selection is empty")

    @staticmethod
    def of(row_ids, provenance: Provenance) -> "Selection":
        ids = frozenset(row_ids)
        return Selection(ids, provenance if ids else Provenance.NONE)

    def to_wire(self) -> dict:
        return {"rowIds": sorted(self.row_ids), "provenance": self.provenance.value}


EMPTY_SELECTION = Selection(frozenset(), Provenance.NONE)


class AggOp(str, Enum):
    COUNT = "count"
    SUM = "sum"
    MEAN = "mean"
    MIN = "min"
    MAX = "max"
    MEDIAN = "median"


@dataclass(frozen=True)
class AggregateSpec:
    group_by: str
    op: AggOp
    measure: str  # ignored for count
    target_bins: int = 10

    def to_wire(self) -> dict:
        return {"groupBy": self.group_by, "op": self.op.value,
                "measure": self.measure, "targetBins": self.target_bins}


@dataclass(frozen=True)
class AggregateView:
    spec: AggregateSpec
    base_selection: frozenset[int]

    def to_wire(self) -> dict:
        return {"spec": self.spec.to_wire(), "baseSelection": sorted(self.base_selection)}


@dataclass(frozen=True)
class ViewState:
    visible_row_ids: frozenset[int]
    scale_domains: ScaleDomains
    selection: Selection = EMPTY_SELECTION
    aggregate_view: AggregateView | None = None

    def __post_init__(self):
        if not self.visible_row_ids:
            raise SpecError("a view must keep at least one visible row")
        if not self.selection.row_ids <= self.visible_row_ids:
            raise SpecError("selection must be a subset of the visible rows")

    def with_selection(self, selection: Selection) -> "ViewState":
        return replace(self, selection=selection)

    def to_wire(self) -> dict:
        return {
            "visibleRowIds": sorted(self.visible_row_ids),
            "scaleDomains": {"x": self.scale_domains.x.to_wire(),
                             "y": self.scale_domains.y.to_wire()},
            "selection": self.selection.to_wire(),
            "aggregateView": self.aggregate_view.to_wire() if self.aggregate_view else None,
        }
