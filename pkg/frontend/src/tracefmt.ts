/**
 * InputTrace serialization: one JSON record per line, keys sorted, compact
 * separators — the exact format the headless CLI reads and writes.
 */

import type { RawEventRecord } from "./types.js";

export interface TraceHeader {
  chartSpecRef: string | null;
  datasetRef: string | null;
  configOverrides: Record<string, string>;
}

function sortedStringify(value: unknown): string {
  if (value === null || typeof value !== "object") return JSON.stringify(value);
  if (Array.isArray(value)) return `[${value.map(sortedStringify).join(",")}]`;
  const entries = Object.entries(value as Record<string, unknown>)
    .filter(([, v]) => v !== undefined)
    .sort(([a], [b]) => (a < b ? -1 : a > b ? 1 : 0))
    .map(([k, v]) => `${JSON.stringify(k)}:${sortedStringify(v)}`);
  return `{${entries.join(",")}}`;
}

export function serializeTrace(header: TraceHeader, events: RawEventRecord[]): string {
  const lines = [
    sortedStringify({
      v: 1,
      kind: "inputTrace",
      chartSpecRef: header.chartSpecRef,
      datasetRef: header.datasetRef,
      configOverrides: header.configOverrides,
    }),
  ];
  for (const e of events) lines.push(sortedStringify(e));
  return lines.join("\n") + "\n";
}

export class TraceRecorder {
  private events: RawEventRecord[] = [];
  recording = false;

  start(): void {
    this.events = [];
    this.recording = true;
  }

  stop(): void {
    this.recording = false;
  }

  add(event: RawEventRecord): void {
    if (this.recording) this.events.push(event);
  }

  addAll(events: RawEventRecord[]): void {
    for (const e of events) this.add(e);
  }

  count(): number {
    return this.events.length;
  }

  serialize(header: TraceHeader): string {
    return serializeTrace(header, this.events);
  }
}
