/** Touch testbed: binds a demo chart session, renders ViewUpdates, captures
 * pointer/motion/menu input, and records replayable traces. */

import { InputCapture, syntheticShake } from "./capture.js";
import { BridgeClient, type SessionHandle } from "./client.js";
import { applyAll, emptyModel, type RenderModel } from "./model.js";
import { listenMotion, requestMotionPermission, type MotionState } from "./motion.js";
import { draw } from "./render.js";
import { TraceRecorder } from "./tracefmt.js";
import type { RawEventRecord } from "./types.js";

const FLUSH_INTERVAL_MS = 120;

const AGG_OPS = ["count", "sum", "mean", "min", "max", "median"];

function el(tag: string, className: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = className;
  return node;
}

class App {
  private client = new BridgeClient();
  private capture = new InputCapture();
  private recorder = new TraceRecorder();
  private model: RenderModel = emptyModel();
  private session: SessionHandle | null = null;
  private canvas: HTMLCanvasElement;
  private ctx: CanvasRenderingContext2D;
  private motionState: MotionState = "unknown";
  private stopMotion: (() => void) | null = null;
  private flushTimer: number | null = null;
  private opIndex = 0;
  private fields: string[] = [];
  private fieldIndex = 0;
  private joystickSide: "left" | "right" = "right";

  constructor(private root: HTMLElement) {
    this.canvas = document.createElement("canvas");
    this.canvas.id = "chart";
    const ctx = this.canvas.getContext("2d");
    if (!ctx) throw new Error("canvas 2d context unavailable");
    this.ctx = ctx;
  }

  async start(): Promise<void> {
    const charts = await this.client.charts();
    this.buildUi(charts);
    await this.bind(charts[0]);
    this.flushTimer = window.setInterval(() => {
      if (this.session) void this.sendEvents([this.capture.flush(performance.now())], false);
    }, FLUSH_INTERVAL_MS);
  }

  // ------------------------------------------------------------------ UI

  private buildUi(charts: string[]): void {
    const header = el("div", "toolbar");
    const select = document.createElement("select");
    for (const name of charts) {
      const opt = document.createElement("option");
      opt.value = opt.textContent = name;
      select.appendChild(opt);
    }
    select.onchange = () => void this.bind(select.value);
    header.appendChild(select);

    header.appendChild(this.button("record", "rec: off", (btn) => {
      if (this.recorder.recording) {
        this.recorder.stop();
        btn.textContent = "rec: off";
        this.exportTrace();
      } else {
        this.recorder.start();
        btn.textContent = "rec: on";
      }
    }));

    const motionBtn = this.button("motion", "enable motion", async (btn) => {
      this.motionState = await requestMotionPermission();
      btn.textContent = `motion: ${this.motionState}`;
      this.updateBanner();
      if (this.motionState === "granted" && !this.stopMotion) {
        this.stopMotion = listenMotion((ax, ay, az, now) => {
          void this.sendEvents([this.capture.motion(ax, ay, az, now)], false);
        });
      }
    });
    header.appendChild(motionBtn);
    this.root.appendChild(header);

    const banner = el("div", "banner");
    banner.id = "banner";
    this.root.appendChild(banner);

    const stage = el("div", "stage");
    stage.appendChild(this.canvas);
    const joystick = this.button("joystick", "joystick", () => {
      void this.sendEvents([this.capture.joystickToggle(performance.now())]);
    });
    joystick.id = "joystick-btn";
    stage.appendChild(joystick);
    // long-press flips the joystick corner for left-handed use
    joystick.oncontextmenu = (e) => {
      e.preventDefault();
      this.joystickSide = this.joystickSide === "right" ? "left" : "right";
      joystick.style.left = this.joystickSide === "left" ? "8px" : "auto";
      joystick.style.right = this.joystickSide === "left" ? "auto" : "8px";
    };
    this.root.appendChild(stage);

    const menu = el("div", "toolbar");
    menu.appendChild(this.button("merge", "merge", () => this.menuCommand("aggregate.merge")));
    menu.appendChild(this.button("by", "by: x", (btn) => {
      this.fieldIndex = (this.fieldIndex + 1) % this.fields.length;
      const field = this.fields[this.fieldIndex];
      btn.textContent = `by: ${field}`;
      this.menuCommand(`aggregate.by:${field}`);
    }));
    menu.appendChild(this.button("op", "op: mean", (btn) => {
      this.opIndex = (this.opIndex + 1) % AGG_OPS.length;
      btn.textContent = `op: ${AGG_OPS[this.opIndex]}`;
      this.menuCommand(`aggregate.op:${AGG_OPS[this.opIndex]}`);
    }));
    menu.appendChild(this.button("undo", "undo", () => this.menuCommand("history.undo")));
    menu.appendChild(this.button("redo", "redo", () => this.menuCommand("history.redo")));
    menu.appendChild(this.button("reset", "reset", () => {
      // menu fallback for denied/unsupported motion: a synthetic shake burst
      void this.sendEvents(syntheticShake(this.capture, performance.now()));
    }));
    this.root.appendChild(menu);

    this.bindPointerEvents();
  }

  private button(id: string, label: string,
                 onTap: (btn: HTMLButtonElement) => void): HTMLButtonElement {
    const btn = document.createElement("button");
    btn.id = `btn-${id}`;
    btn.textContent = label;
    btn.onclick = () => onTap(btn);
    return btn;
  }

  private updateBanner(): void {
    const banner = document.getElementById("banner");
    if (!banner) return;
    const bits: string[] = [];
    if (this.motionState === "denied" || this.motionState === "unsupported") {
      bits.push(`motion ${this.motionState}: shake-to-reset replaced by the reset button`);
    }
    if (this.model.lastError) {
      bits.push(`${this.model.lastError.code}: ${this.model.lastError.message}`);
    }
    banner.textContent = bits.join(" | ");
    banner.style.display = bits.length ? "block" : "none";
  }

  // ------------------------------------------------------------- session

  private async bind(chart: string): Promise<void> {
    if (this.recorder.recording) {
      // recording is scoped to one session; switching charts closes the file
      this.recorder.stop();
      this.exportTrace();
      const btn = document.getElementById("btn-record");
      if (btn) btn.textContent = "rec: off";
    }
    this.capture = new InputCapture();
    this.model = emptyModel();
    this.session = await this.client.createSession(chart);
    this.fields = this.session.fields;
    this.fieldIndex = 0;
    const { width, height, margins } = this.session.chart;
    const dpr = window.devicePixelRatio || 1;
    const cssW = width + margins.left + margins.right;
    const cssH = height + margins.top + margins.bottom;
    this.canvas.style.width = `${cssW}px`;
    this.canvas.style.height = `${cssH}px`;
    this.canvas.width = Math.round(cssW * dpr);
    this.canvas.height = Math.round(cssH * dpr);
    applyAll(this.model, this.session.updates);
    this.redraw();
  }

  private toDip(e: PointerEvent): [number, number] {
    const rect = this.canvas.getBoundingClientRect();
    const m = this.session?.chart.margins ?? { left: 0, top: 0, right: 0, bottom: 0 };
    return [e.clientX - rect.left - m.left, e.clientY - rect.top - m.top];
  }

  private bindPointerEvents(): void {
    this.canvas.style.touchAction = "none"; // the engine owns all gestures
    this.canvas.addEventListener("pointerdown", (e) => {
      this.canvas.setPointerCapture(e.pointerId);
      const [x, y] = this.toDip(e);
      void this.sendEvents([this.capture.down(e.pointerId, x, y, performance.now())]);
    });
    this.canvas.addEventListener("pointermove", (e) => {
      const [x, y] = this.toDip(e);
      const record = this.capture.move(e.pointerId, x, y, performance.now());
      if (record) void this.sendEvents([record]);
    });
    const finish = (e: PointerEvent) => {
      const [x, y] = this.toDip(e);
      const record = this.capture.up(e.pointerId, x, y, performance.now());
      if (record) void this.sendEvents([record]);
    };
    this.canvas.addEventListener("pointerup", finish);
    this.canvas.addEventListener("pointercancel", finish);
  }

  private menuCommand(command: string): void {
    void this.sendEvents([this.capture.menu(command, performance.now())]);
  }

  private async sendEvents(events: RawEventRecord[], redrawAlways = true): Promise<void> {
    if (!this.session) return;
    this.recorder.addAll(events);
    const updates = await this.client.send(this.session.sessionId, events);
    if (updates.length || redrawAlways) {
      this.model.lastError = null;
      applyAll(this.model, updates);
      this.redraw();
      this.updateBanner();
    }
  }

  private redraw(): void {
    const dpr = window.devicePixelRatio || 1;
    const m = this.session?.chart.margins ?? { left: 0, top: 0, right: 0, bottom: 0 };
    this.ctx.save();
    this.ctx.setTransform(dpr, 0, 0, dpr, 0, 0);
    this.ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);
    this.ctx.fillStyle = "#ffffff";
    this.ctx.fillRect(0, 0, this.canvas.width, this.canvas.height);
    this.ctx.translate(m.left, m.top);
    draw(this.ctx, this.model);
    this.ctx.restore();
  }

  private exportTrace(): void {
    if (this.recorder.count() === 0) return;
    const text = this.recorder.serialize({
      chartSpecRef: "spec.json",
      datasetRef: "data.csv",
      configOverrides: {},
    });
    const blob = new Blob([text], { type: "application/x-ndjson" });
    const a = document.createElement("a");
    a.href = URL.createObjectURL(blob);
    a.download = `session-${Date.now()}.trace`;
    a.click();
    URL.revokeObjectURL(a.href);
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  const app = new App(document.getElementById("app") as HTMLElement);
  void app.start().catch((err) => {
    const banner = document.getElementById("banner") ?? document.body;
    banner.textContent = `failed to load engine bridge: ${err}`;
    (banner as HTMLElement).style.display = "block";
  });
}
