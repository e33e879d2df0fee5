"""Canonical rendering helpers.

Snapshots and logs must be byte-identical across platforms, so every float
passes through one fixed formatter before serialization and dict keys are
always sorted. Keep all output formatting funnelled through here.
"""

from __future__ import annotations

import json
from datetime import datetime, timedelta
from typing import Any

_EPOCH = datetime(1970, 1, 1)
_DAY_MS = 86_400_000


def fmt_number(x: float | int) -> str:
    """Render a number with 9 significant digits (ints stay exact)."""
    if isinstance(x, bool):
        raise TypeError("bool is not a number here")
    if isinstance(x, int):
        return str(x)
    if x == 0:
        return "0"  # normalizes -0.0
    return "%.9g" % x


def fmt_temporal(ms: float | int) -> str:
    """Epoch milliseconds -> ISO-8601 (date only when at UTC midnight)."""
    ms = int(ms)
    dt = _EPOCH + timedelta(milliseconds=ms)
    if ms % _DAY_MS == 0:
        return dt.date().isoformat()
    return dt.isoformat(timespec="milliseconds")


def parse_temporal(text: str) -> int:
    """ISO-8601 date or datetime (assumed UTC) -> epoch milliseconds."""
    dt = datetime.fromisoformat(text)
    if dt.tzinfo is not None:
        dt = dt.replace(tzinfo=None) - dt.utcoffset()  # type: ignore[operator]
    delta = dt - _EPOCH
    return round(delta.total_seconds() * 1000)


def canonicalize(obj: Any) -> Any:
    """Recursively replace floats with fixed-precision strings, sets with sorted lists."""
    if isinstance(obj, float):
        return fmt_number(obj)
    if isinstance(obj, (set, frozenset)):
        return [canonicalize(v) for v in sorted(obj)]
    if isinstance(obj, dict):
        return {str(k): canonicalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonicalize(v) for v in obj]
    return obj


def canonical_json(obj: Any) -> str:
    return json.dumps(canonicalize(obj), sort_keys=True, separators=(",", ":"), ensure_ascii=False)
