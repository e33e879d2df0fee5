/**
 * Renders each demo chart's engine-produced update stream (frozen fixtures
 * from the wire format) into a stub 2D context: pins the wire schema across
 * the language boundary and exercises every painting path.
 */

import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { applyAll, emptyModel } from "../src/model.js";
import { draw } from "../src/render.js";
import type { ViewUpdateWire } from "../src/types.js";

function loadFixture(chart: string): ViewUpdateWire[] {
  const path = join(__dirname, "fixtures", `${chart}.updates.json`);
  return JSON.parse(readFileSync(path, "utf-8"));
}

function makeStubCtx() {
  const calls = new Map<string, number>();
  const ctx: any = new Proxy(
    { measureText: (s: string) => ({ width: 8 * s.length }) },
    {
      get(target: any, prop: string) {
        if (prop in target) return target[prop];
        return (..._args: unknown[]) => {
          calls.set(prop, (calls.get(prop) ?? 0) + 1);
        };
      },
      set() {
        return true;
      },
    },
  );
  return { ctx: ctx as CanvasRenderingContext2D, calls };
}

describe("renderer over engine fixtures", () => {
  for (const chart of ["iris", "population", "unemployment"]) {
    it(`draws the ${chart} scene with inspection overlays`, () => {
      const updates = loadFixture(chart);
      const model = applyAll(emptyModel(), updates);

      expect(model.scene).not.toBeNull();
      expect(model.scene!.marks.length).toBeGreaterThan(0);
      expect(model.inspection.lines.length).toBeGreaterThan(0); // axis drag ran
      expect(model.tooltip.length).toBeGreaterThan(0);

      const { ctx, calls } = makeStubCtx();
      draw(ctx, model);
      expect(calls.get("stroke") ?? 0).toBeGreaterThan(0);
      expect(calls.get("fillText") ?? 0).toBeGreaterThan(0); // ticks + tooltip text
      if (chart === "population") {
        expect(calls.get("fillRect") ?? 0).toBeGreaterThan(10); // bars
      } else {
        expect(calls.get("arc") ?? 0).toBeGreaterThan(20); // points / vertices
      }
    });
  }

  it("legend entries render for color-encoded charts", () => {
    const model = applyAll(emptyModel(), loadFixture("iris"));
    expect(model.scene!.legend.map((e) => e.category)).toEqual(
      ["setosa", "versicolor", "virginica"],
    );
  });

  it("draws nothing before the first scene arrives", () => {
    const { ctx, calls } = makeStubCtx();
    draw(ctx, emptyModel());
    expect(calls.size).toBe(0);
  });
});
