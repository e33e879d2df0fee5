/**
 * Pointer/motion/menu input -> raw event records on a session-relative
 * integer-millisecond clock. Pure logic, no DOM access, so the mapping is
 * testable and the recorded stream replays deterministically.
 */

import type { RawEventKind, RawEventRecord } from "./types.js";

export class InputCapture {
  private pointerIds = new Map<number, number>();
  private nextPointerId = 1;
  private startMs: number | null = null;
  private lastT = 0;

  /** Session-relative, monotone, integer milliseconds. */
  rel(nowMs: number): number {
    if (this.startMs === null) this.startMs = nowMs;
    const t = Math.max(Math.round(nowMs - this.startMs), this.lastT);
    this.lastT = t;
    return t;
  }

  private stableId(domPointerId: number): number {
    let id = this.pointerIds.get(domPointerId);
    if (id === undefined) {
      id = this.nextPointerId++;
      this.pointerIds.set(domPointerId, id);
    }
    return id;
  }

  down(domPointerId: number, x: number, y: number, nowMs: number): RawEventRecord {
    return { t: this.rel(nowMs), kind: "touchDown", pointerId: this.stableId(domPointerId), x, y };
  }

  move(domPointerId: number, x: number, y: number, nowMs: number): RawEventRecord | null {
    const id = this.pointerIds.get(domPointerId);
    if (id === undefined) return null; // move from a pointer we never saw down
    return { t: this.rel(nowMs), kind: "touchMove", pointerId: id, x, y };
  }

  up(domPointerId: number, x: number, y: number, nowMs: number): RawEventRecord | null {
    const id = this.pointerIds.get(domPointerId);
    if (id === undefined) return null;
    this.pointerIds.delete(domPointerId);
    return { t: this.rel(nowMs), kind: "touchUp", pointerId: id, x, y };
  }

  motion(ax: number, ay: number, az: number, nowMs: number): RawEventRecord {
    return { t: this.rel(nowMs), kind: "motionSample", ax, ay, az };
  }

  menu(command: string, nowMs: number): RawEventRecord {
    return { t: this.rel(nowMs), kind: "menuCommand", command };
  }

  joystickToggle(nowMs: number): RawEventRecord {
    return { t: this.rel(nowMs), kind: "joystickToggle" };
  }

  flush(nowMs: number): RawEventRecord {
    return { t: this.rel(nowMs), kind: "flush" };
  }

  activePointers(): number {
    return this.pointerIds.size;
  }
}

/**
 * A synthetic shake burst: three alternating-sign samples that clear the
 * engine's high-pass threshold. Used as the menu fallback when device motion
 * is unavailable or denied; the recorded trace replays like a real shake.
 */
export function syntheticShake(capture: InputCapture, nowMs: number): RawEventRecord[] {
  const burst: RawEventRecord[] = [];
  for (const ax of [35, -35, 35]) {
    burst.push(capture.motion(ax, 0, 0, nowMs));
    nowMs += 40;
  }
  return burst;
}
