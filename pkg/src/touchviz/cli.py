"""Trace replay / verification / demo-emission command line.

Exit codes: 0 success, 1 failure (mismatch, bad input files, halted replay),
2 usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .demo import CHART_NAMES, write_demo
from .engine import load_config
from .errors import TouchVizError
from .trace import (first_divergence, load_chart_spec, load_dataset, read_snapshot_log,
                    read_trace, replay, write_snapshot_log)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="touchviz",
                                     description="Deterministic interaction-trace tooling")
    sub = parser.add_subparsers(dest="command", required=True)

    rp = sub.add_parser("replay", help="replay a raw-input trace against a fresh engine")
    rp.add_argument("--spec", required=True, help="chart spec JSON file")
    rp.add_argument("--data", required=True, help="dataset CSV file")
    rp.add_argument("--trace", required=True, help="input trace file")
    rp.add_argument("--out", required=True, help="snapshot log output path")
    rp.add_argument("--snapshot-every", choices=("change", "event", "final"),
                    default="change")
    rp.add_argument("--config", help="engine config file (key = value lines)")

    vf = sub.add_parser("verify", help="byte-compare a snapshot log against a golden")
    vf.add_argument("--out", required=True, help="freshly produced snapshot log")
    vf.add_argument("--golden", required=True, help="golden snapshot log")

    dm = sub.add_parser("demo", help="emit a bundled demo chart: spec, data, sample traces")
    dm.add_argument("--chart", required=True, choices=CHART_NAMES)
    dm.add_argument("--out", required=True, help="output directory")
    return parser


def _cmd_replay(args) -> int:
    spec, schema = load_chart_spec(args.spec)
    data = load_dataset(args.data, schema)
    trace = read_trace(args.trace)
    config = load_config(args.config) if args.config else None
    log = replay(trace, spec, data, snapshot_every=args.snapshot_every, config=config)
    write_snapshot_log(log, args.out)
    print(f"replayed {len(trace.events)} events -> {len(log.entries)} snapshots -> {args.out}")
    return 0


def _cmd_verify(args) -> int:
    out_bytes = Path(args.out).read_bytes()
    golden_bytes = Path(args.golden).read_bytes()
    if out_bytes == golden_bytes:
        print("OK: snapshot logs are byte-identical")
        return 0
    index = first_divergence(read_snapshot_log(args.out), read_snapshot_log(args.golden))
    where = f"event index {index}" if index is not None else "header/trailing bytes"
    print(f"MISMATCH: logs first diverge at {where}", file=sys.stderr)
    return 1


def _cmd_demo(args) -> int:
    for path in write_demo(args.chart, args.out):
        print(path)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {"replay": _cmd_replay, "verify": _cmd_verify, "demo": _cmd_demo}
    try:
        return handlers[args.command](args)
    except (TouchVizError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
