/** HTTP client for the engine bridge. Events are sent strictly in order:
 * calls chain on one promise so the stream the engine sees (and the recorder
 * stores) is the stream the user produced. */

import type { ChartInfo, RawEventRecord, ViewUpdateWire } from "./types.js";

export interface SessionHandle {
  sessionId: string;
  chart: ChartInfo;
  fields: string[];
  updates: ViewUpdateWire[];
}

export class BridgeClient {
  private queue: Promise<unknown> = Promise.resolve();

  constructor(private baseUrl = "") {}

  async charts(): Promise<string[]> {
    const res = await fetch(`${this.baseUrl}/api/charts`);
    if (!res.ok) throw new Error(`charts: HTTP ${res.status}`);
    return (await res.json()).charts;
  }

  async createSession(chart: string): Promise<SessionHandle> {
    const res = await fetch(`${this.baseUrl}/api/session`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ chart }),
    });
    if (!res.ok) throw new Error(`createSession: HTTP ${res.status}`);
    return await res.json();
  }

  /** Send a batch of raw events; resolves with the engine's ViewUpdates. */
  send(sessionId: string, events: RawEventRecord[]): Promise<ViewUpdateWire[]> {
    const task = this.queue.then(async () => {
      const res = await fetch(`${this.baseUrl}/api/session/${sessionId}/events`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ events }),
      });
      if (!res.ok) throw new Error(`send: HTTP ${res.status}`);
      return (await res.json()).updates as ViewUpdateWire[];
    });
    this.queue = task.catch(() => undefined); // keep the chain alive on errors
    return task;
  }

  async snapshot(sessionId: string): Promise<unknown> {
    const res = await fetch(`${this.baseUrl}/api/session/${sessionId}/snapshot`);
    if (!res.ok) throw new Error(`snapshot: HTTP ${res.status}`);
    return (await res.json()).snapshot;
  }
}
