/** Device-motion capture with the iOS permission dance; degrades gracefully
 * to the menu reset fallback when the sensor is unavailable or denied. */

export type MotionState = "unknown" | "granted" | "denied" | "unsupported";

export async function requestMotionPermission(): Promise<MotionState> {
  if (typeof window === "undefined") return "unsupported";
  const DM = (window as any).DeviceMotionEvent;
  if (!DM) return "unsupported";
  if (typeof DM.requestPermission !== "function") return "granted"; // non-iOS
  try {
    const res = await DM.requestPermission();
    return res === "granted" ? "granted" : "denied";
  } catch {
    return "denied";
  }
}

export function listenMotion(
  onSample: (ax: number, ay: number, az: number, nowMs: number) => void,
): () => void {
  const handler = (e: DeviceMotionEvent) => {
    const a = e.accelerationIncludingGravity;
    if (!a || a.x === null || a.y === null || a.z === null) return;
    onSample(a.x, a.y, a.z, performance.now());
  };
  window.addEventListener("devicemotion", handler);
  return () => window.removeEventListener("devicemotion", handler);
}
