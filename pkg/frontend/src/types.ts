/** Wire types shared with the engine (ViewUpdate schema v1 and trace records). */

export type RawEventKind =
  | "touchDown"
  | "touchMove"
  | "touchUp"
  | "motionSample"
  | "menuCommand"
  | "joystickToggle"
  | "flush";

export interface RawEventRecord {
  t: number;
  kind: RawEventKind;
  pointerId?: number;
  x?: number;
  y?: number;
  ax?: number;
  ay?: number;
  az?: number;
  command?: string;
}

export interface MarkWire {
  markId: number;
  rowIds: number[];
  shape: "point" | "rect" | "lineVertex";
  center: [number, number];
  bounds: [number, number, number, number];
  xValue: unknown;
  yValue: number;
  series: string | null;
  clipped: boolean;
}

export interface TickWire {
  pos: number;
  label: string;
}

export interface AxisWire {
  band: [number, number, number, number];
  scale: { kind: string; domain: unknown[] };
  encoding: { field: string; fieldType: string };
  ticks: TickWire[];
}

export interface LegendWire {
  category: string;
  bounds: [number, number, number, number];
  filtered: boolean;
}

export interface SceneWire {
  chartType: "scatter" | "bar" | "multiline";
  width: number;
  height: number;
  marks: MarkWire[];
  axes: { x: AxisWire; y: AxisWire };
  legend: LegendWire[];
}

export interface InspectionLineWire {
  axis: "x" | "y";
  stepCount: number;
  stepIndex: number;
  snappedValue: unknown;
  label: string;
  screenPos: number;
}

export interface InspectionWire {
  lines: InspectionLineWire[];
  activeMarkIds: number[];
  joystickEnabled: boolean;
  joystick: { origin: [number, number]; box: [number, number, number, number] } | null;
  lassoPath: [number, number][] | null;
}

export interface TooltipRowWire {
  series: string | null;
  markId: number;
  fields: [string, string][];
}

export interface MenuStateWire {
  undo: boolean;
  redo: boolean;
  aggregate: boolean;
  joystickEnabled: boolean;
}

export interface ViewUpdateWire {
  v: 1;
  kind:
    | "sceneChanged"
    | "inspectionChanged"
    | "selectionChanged"
    | "tooltip"
    | "menuStateChanged"
    | "error";
  payload: any;
}

export interface ChartInfo {
  name: string;
  width: number;
  height: number;
  margins: { top: number; right: number; bottom: number; left: number };
}
