/**
 * RendererScene state assembled purely from ViewUpdates. The renderer never
 * reads engine internals: applying the update stream is the only input.
 */

import type {
  InspectionWire, MenuStateWire, SceneWire, TooltipRowWire, ViewUpdateWire,
} from "./types.js";

export interface RenderModel {
  scene: SceneWire | null;
  selectedRowIds: Set<number>;
  selectionProvenance: string;
  inspection: InspectionWire;
  tooltip: TooltipRowWire[];
  menu: MenuStateWire;
  lastError: { code: string; message: string } | null;
}

export function emptyModel(): RenderModel {
  return {
    scene: null,
    selectedRowIds: new Set(),
    selectionProvenance: "none",
    inspection: {
      lines: [],
      activeMarkIds: [],
      joystickEnabled: false,
      joystick: null,
      lassoPath: null,
    },
    tooltip: [],
    menu: { undo: false, redo: false, aggregate: false, joystickEnabled: false },
    lastError: null,
  };
}

export function applyUpdate(model: RenderModel, update: ViewUpdateWire): RenderModel {
  if (update.v !== 1) return model; // unknown wire version: ignore defensively
  switch (update.kind) {
    case "sceneChanged":
      model.scene = update.payload.scene as SceneWire;
      break;
    case "selectionChanged":
      model.selectedRowIds = new Set(update.payload.rowIds as number[]);
      model.selectionProvenance = update.payload.provenance as string;
      break;
    case "inspectionChanged":
      model.inspection = update.payload as InspectionWire;
      break;
    case "tooltip":
      model.tooltip = update.payload.rows as TooltipRowWire[];
      break;
    case "menuStateChanged":
      model.menu = update.payload as MenuStateWire;
      break;
    case "error":
      model.lastError = { code: update.payload.code, message: update.payload.message };
      break;
  }
  return model;
}

export function applyAll(model: RenderModel, updates: ViewUpdateWire[]): RenderModel {
  for (const u of updates) applyUpdate(model, u);
  return model;
}

export function isMarkSelected(model: RenderModel, markId: number): boolean {
  const scene = model.scene;
  if (!scene || model.selectedRowIds.size === 0) return false;
  const mark = scene.marks[markId];
  return mark.rowIds.some((rid) => model.selectedRowIds.has(rid));
}
