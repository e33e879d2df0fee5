/** Canvas painting for the render model. Coordinates are engine dips; the
 * caller translates the context so the plot origin sits at (0, 0). */

import { isMarkSelected, type RenderModel } from "./model.js";

const SERIES_COLORS = ["#4c78a8", "#f58518", "#54a24b", "#e45756", "#72b7b2", "#b279a2"];
const SELECT_COLOR = "#d62728";
const GRID_COLOR = "#dddddd";
const AXIS_COLOR = "#333333";
const INSPECT_COLOR = "#7b3294";

function seriesColor(model: RenderModel, series: string | null): string {
  if (!model.scene || series === null) return SERIES_COLORS[0];
  const idx = model.scene.legend.findIndex((e) => e.category === series);
  return SERIES_COLORS[(idx >= 0 ? idx : 0) % SERIES_COLORS.length];
}

export function draw(ctx: CanvasRenderingContext2D, model: RenderModel): void {
  const scene = model.scene;
  if (!scene) return;
  const { width, height } = scene;

  ctx.save();
  ctx.font = "11px system-ui, sans-serif";

  // plot frame + axis tick grid
  ctx.strokeStyle = GRID_COLOR;
  ctx.lineWidth = 1;
  for (const tick of scene.axes.x.ticks) {
    ctx.beginPath();
    ctx.moveTo(tick.pos, 0);
    ctx.lineTo(tick.pos, height);
    ctx.stroke();
  }
  for (const tick of scene.axes.y.ticks) {
    ctx.beginPath();
    ctx.moveTo(0, tick.pos);
    ctx.lineTo(width, tick.pos);
    ctx.stroke();
  }
  ctx.strokeStyle = AXIS_COLOR;
  ctx.strokeRect(0, 0, width, height);

  ctx.fillStyle = AXIS_COLOR;
  ctx.textAlign = "center";
  ctx.textBaseline = "top";
  for (const tick of scene.axes.x.ticks) ctx.fillText(tick.label, tick.pos, height + 6);
  ctx.textAlign = "right";
  ctx.textBaseline = "middle";
  for (const tick of scene.axes.y.ticks) ctx.fillText(tick.label, -8, tick.pos);

  // multiline connecting paths, series by series, before the vertices
  if (scene.chartType === "multiline") {
    const bySeries = new Map<string, typeof scene.marks>();
    for (const m of scene.marks) {
      const key = m.series ?? "";
      if (!bySeries.has(key)) bySeries.set(key, []);
      (bySeries.get(key) as typeof scene.marks).push(m);
    }
    for (const [series, marks] of bySeries) {
      ctx.strokeStyle = seriesColor(model, series);
      ctx.lineWidth = 1.5;
      ctx.beginPath();
      marks.forEach((m, i) => {
        if (i === 0) ctx.moveTo(m.center[0], m.center[1]);
        else ctx.lineTo(m.center[0], m.center[1]);
      });
      ctx.stroke();
    }
  }

  for (const mark of scene.marks) {
    const selected = isMarkSelected(model, mark.markId);
    const inspected = model.inspection.activeMarkIds.includes(mark.markId);
    const color = selected ? SELECT_COLOR : seriesColor(model, mark.series);
    ctx.fillStyle = color;
    if (mark.shape === "rect") {
      const [x, y, w, h] = mark.bounds;
      ctx.fillRect(x, y, w, h);
      if (selected || inspected) {
        ctx.strokeStyle = SELECT_COLOR;
        ctx.lineWidth = 2;
        ctx.strokeRect(x, y, w, h);
      }
    } else {
      ctx.beginPath();
      ctx.arc(mark.center[0], mark.center[1], inspected ? 6 : 4, 0, Math.PI * 2);
      ctx.fill();
      if (inspected) {
        ctx.strokeStyle = INSPECT_COLOR;
        ctx.lineWidth = 2;
        ctx.stroke();
      }
    }
  }

  // legend slots in the top margin
  ctx.textAlign = "left";
  ctx.textBaseline = "middle";
  for (const entry of scene.legend) {
    const [x, y, w, h] = entry.bounds;
    const color = seriesColor(model, entry.category);
    ctx.globalAlpha = entry.filtered ? 0.3 : 1.0;
    ctx.fillStyle = color;
    ctx.fillRect(x, y + h / 2 - 5, 10, 10);
    ctx.fillStyle = AXIS_COLOR;
    ctx.fillText(entry.category, x + 14, y + h / 2);
    ctx.globalAlpha = 1.0;
  }

  // inspection lines at the snapped value
  for (const line of model.inspection.lines) {
    ctx.strokeStyle = INSPECT_COLOR;
    ctx.lineWidth = 1.5;
    ctx.setLineDash([5, 3]);
    ctx.beginPath();
    if (line.axis === "x") {
      ctx.moveTo(line.screenPos, 0);
      ctx.lineTo(line.screenPos, height);
    } else {
      ctx.moveTo(0, line.screenPos);
      ctx.lineTo(width, line.screenPos);
    }
    ctx.stroke();
    ctx.setLineDash([]);
    ctx.fillStyle = INSPECT_COLOR;
    if (line.axis === "x") {
      ctx.textAlign = "center";
      ctx.fillText(line.label, line.screenPos, height + 20);
    } else {
      ctx.textAlign = "right";
      ctx.fillText(line.label, -8, line.screenPos - 10);
    }
  }

  // joystick thumb box
  const js = model.inspection.joystick;
  if (js) {
    ctx.strokeStyle = "#999999";
    ctx.setLineDash([3, 3]);
    ctx.strokeRect(js.box[0], js.box[1], js.box[2], js.box[3]);
    ctx.setLineDash([]);
  }

  // lasso path preview
  const lasso = model.inspection.lassoPath;
  if (lasso && lasso.length > 1) {
    ctx.strokeStyle = SELECT_COLOR;
    ctx.lineWidth = 1;
    ctx.setLineDash([4, 4]);
    ctx.beginPath();
    lasso.forEach(([x, y], i) => (i === 0 ? ctx.moveTo(x, y) : ctx.lineTo(x, y)));
    ctx.stroke();
    ctx.setLineDash([]);
  }

  // tooltip box near the top-left of the plot
  if (model.tooltip.length > 0) {
    const lines = model.tooltip.flatMap((row) => {
      const prefix = row.series ? `${row.series}: ` : "";
      return [prefix + row.fields.map(([k, v]) => `${k}=${v}`).join("  ")];
    });
    const boxW = Math.max(...lines.map((l) => ctx.measureText(l).width)) + 16;
    const boxH = lines.length * 16 + 10;
    ctx.fillStyle = "rgba(255,255,255,0.92)";
    ctx.strokeStyle = INSPECT_COLOR;
    ctx.fillRect(8, 8, boxW, boxH);
    ctx.strokeRect(8, 8, boxW, boxH);
    ctx.fillStyle = "#222222";
    ctx.textAlign = "left";
    lines.forEach((l, i) => ctx.fillText(l, 16, 21 + i * 16));
  }

  ctx.restore();
}
