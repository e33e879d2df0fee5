"""Tabular data model, chart specification, and scale computation.

Geometry convention used throughout the package: the plot area spans
``x in [0, width]`` and ``y in [0, height]`` in device-independent pixels
(dip) with y growing downward. Margins reserve space *outside* that
rectangle (negative x for the y axis, y > height for the x axis).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import EmptyDomain, SpecError

DOMAIN_PADDING = 0.05  # fraction of span added on each side of auto domains


class FieldType(str, Enum):
    NOMINAL = "nominal"
    QUANTITATIVE = "quantitative"
    TEMPORAL = "temporal"


class ChartType(str, Enum):
    SCATTER = "scatter"
    BAR = "bar"
    MULTILINE = "multiline"


class Dataset:
    """Typed rows with dense, stable row ids (0..n-1 in input order).

    Values must conform to the declared field type: nominal -> str,
    quantitative -> int/float, temporal -> epoch milliseconds (int).
    """

    def __init__(self, rows: list[dict], schema: dict[str, FieldType]):
        self.schema = {name: FieldType(ft) for name, ft in schema.items()}
        self.rows = rows
        self._validate()

    def _validate(self) -> None:
        fields = set(self.schema)
        for rid, row in enumerate(self.rows):
            if set(row) != fields:
                raise SpecError(f"row {rid}: fields {sorted(row)} != schema {sorted(fields)}")
            for name, ft in self.schema.items():
                v = row[name]
                if ft is FieldType.NOMINAL:
                    ok = isinstance(v, str)
                elif ft is FieldType.QUANTITATIVE:
                    ok = isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v)
                else:  # temporal: epoch ms
                    ok = isinstance(v, int) and not isinstance(v, bool)
                if not ok:
                    raise SpecError(f"row {rid}, field {name!r}: {v!r} is not {ft.value}")

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def row_ids(self) -> range:
        return range(len(self.rows))

    def values(self, fieldname: str, row_ids=None) -> list:
        if fieldname not in self.schema:
            raise SpecError(f"unknown field {fieldname!r}")
        ids = sorted(row_ids) if row_ids is not None else self.row_ids
        return [self.rows[i][fieldname] for i in ids]


@dataclass(frozen=True)
class Encoding:
    field: str
    field_type: FieldType


@dataclass(frozen=True)
class Margins:
    top: float = 32.0
    right: float = 16.0
    bottom: float = 56.0
    left: float = 56.0


@dataclass(frozen=True)
class ChartSpec:
    chart_type: ChartType
    x: Encoding
    y: Encoding
    color: Encoding | None = None
    width: float = 360.0
    height: float = 360.0
    margins: Margins = field(default_factory=Margins)

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise SpecError("plot width and height must be positive")
        ct = self.chart_type
        if ct is ChartType.SCATTER:
            if self.x.field_type is not FieldType.QUANTITATIVE or self.y.field_type is not FieldType.QUANTITATIVE:
                raise SpecError("scatter requires quantitative x and y")
        elif ct is ChartType.BAR:
            if self.x.field_type is FieldType.QUANTITATIVE:
                raise SpecError("bar requires nominal or temporal x")
            if self.y.field_type is not FieldType.QUANTITATIVE:
                raise SpecError("bar requires quantitative y")
        elif ct is ChartType.MULTILINE:
            if self.color is None:
                raise SpecError("multiline requires a color (series) encoding")
            if self.y.field_type is not FieldType.QUANTITATIVE:
                raise SpecError("multiline requires quantitative y")

    def validate_schema(self, data: Dataset) -> None:
        for enc in (self.x, self.y, self.color):
            if enc is None:
                continue
            declared = data.schema.get(enc.field)
            if declared is None:
                raise SpecError(f"encoding field {enc.field!r} not in dataset schema")
            if declared is not enc.field_type:
                raise SpecError(
                    f"encoding field {enc.field!r} is {declared.value}, spec says {enc.field_type.value}"
                )


@dataclass(frozen=True)
class Domain:
    """A pinned scale domain: numeric (lo, hi) for linear/time, categories for band."""

    kind: str  # linear | time | band
    values: tuple

    def __post_init__(self):
        if self.kind in ("linear", "time"):
            lo, hi = self.values
            if not (lo < hi):
                raise SpecError(f"{self.kind} domain needs lo < hi, got {self.values}")
        elif self.kind == "band":
            if len(set(self.values)) != len(self.values):
                raise SpecError("band domain categories must be distinct")
        else:
            raise SpecError(f"unknown domain kind {self.kind!r}")

    def to_wire(self) -> dict:
        return {"kind": self.kind, "domain": list(self.values)}


@dataclass(frozen=True)
class ScaleDomains:
    x: Domain
    y: Domain


@dataclass(frozen=True)
class Scale:
    """Positional scale. For band scales apply() maps a category to its band center."""

    kind: str  # linear | time | band
    domain: tuple
    range: tuple[float, float]

    def apply(self, v) -> float:
        r0, r1 = self.range
        if self.kind == "band":
            i = self._index(v)
            bw = (r1 - r0) / len(self.domain)
            return r0 + (i + 0.5) * bw
        d0, d1 = self.domain
        return r0 + (v - d0) / (d1 - d0) * (r1 - r0)

    def invert(self, p: float):
        if self.kind == "band":
            raise SpecError("band scales have no numeric inverse")
        r0, r1 = self.range
        d0, d1 = self.domain
        return d0 + (p - r0) / (r1 - r0) * (d1 - d0)

    def band_interval(self, v) -> tuple[float, float]:
        if self.kind != "band":
            raise SpecError("band_interval on a non-band scale")
        r0, r1 = self.range
        bw = (r1 - r0) / len(self.domain)
        i = self._index(v)
        return r0 + i * bw, r0 + (i + 1) * bw

    def _index(self, v) -> int:
        try:
            return self.domain.index(v)
        except ValueError:
            raise SpecError(f"category {v!r} not in band domain") from None


def padded_extent(values: list[float]) -> tuple[float, float]:
    """[min, max] expanded by 5% of span each side; degenerate spans widen by max(|v|*0.05, 1)."""
    if not values:
        raise EmptyDomain("cannot compute a domain from zero values")
    mn = min(values)
    mx = max(values)
    if mn == mx:
        pad = max(abs(mn) * DOMAIN_PADDING, 1.0)
    else:
        pad = (mx - mn) * DOMAIN_PADDING
    return mn - pad, mx + pad


def compute_scale(field_type: FieldType, values: list, range_dip: tuple[float, float]) -> Scale:
    """Build a scale over observed values: band for nominal, padded linear/time otherwise."""
    if not values:
        raise EmptyDomain("cannot compute a scale over zero values")
    if field_type is FieldType.NOMINAL:
        return Scale(kind="band", domain=tuple(dict.fromkeys(values)), range=range_dip)
    for v in values:
        if not math.isfinite(v):
            raise SpecError(f"non-finite value {v!r} in scale domain")
    kind = "time" if field_type is FieldType.TEMPORAL else "linear"
    return Scale(kind=kind, domain=padded_extent(values), range=range_dip)


def _bar_categories(data: Dataset, x_field: str, row_ids) -> list:
    return list(dict.fromkeys(data.values(x_field, row_ids)))


def _bar_sums(data: Dataset, spec: ChartSpec, row_ids) -> list[float]:
    sums: dict = {}
    for rid in sorted(row_ids):
        row = data.rows[rid]
        key = row[spec.x.field]
        sums[key] = sums.get(key, 0.0) + row[spec.y.field]
    return list(sums.values())


def compute_view_domains(spec: ChartSpec, data: Dataset, row_ids) -> ScaleDomains:
    """Pin the scale domains a view should use for the given rows.

    Bar charts get a band x over represented categories and a y sized to the
    per-category sums (bars render as sums). Everything else follows the raw
    row values with the standard 5% padding.
    """
    spec.validate_schema(data)
    row_ids = sorted(row_ids)
    if not row_ids:
        raise EmptyDomain("cannot derive domains for an empty row set")

    if spec.chart_type is ChartType.BAR:
        x_dom = Domain("band", tuple(_bar_categories(data, spec.x.field, row_ids)))
        y_dom = Domain("linear", padded_extent(_bar_sums(data, spec, row_ids)))
        return ScaleDomains(x=x_dom, y=y_dom)

    def axis_domain(enc: Encoding) -> Domain:
        vals = data.values(enc.field, row_ids)
        if enc.field_type is FieldType.NOMINAL:
            return Domain("band", tuple(dict.fromkeys(vals)))
        kind = "time" if enc.field_type is FieldType.TEMPORAL else "linear"
        return Domain(kind, padded_extent(vals))

    return ScaleDomains(x=axis_domain(spec.x), y=axis_domain(spec.y))


def scale_for(domain: Domain, range_dip: tuple[float, float]) -> Scale:
    return Scale(kind=domain.kind, domain=domain.values, range=range_dip)
