// Pure geometry and parameter helpers shared by the views. Nothing in here
// touches the DOM, so all of it is unit-testable.

import type { RegionDoc } from "./api.js";

export type AlgorithmKind = "cycp" | "exparp" | "dr" | "cycdr";

export const ALGORITHM_KINDS: AlgorithmKind[] = ["cycp", "exparp", "dr", "cycdr"];

export const ALGORITHM_LABELS: Record<AlgorithmKind, string> = {
  cycp: "Cyclic projections",
  exparp: "Extrapolated parallel",
  dr: "Douglas-Rachford",
  cycdr: "Cyclic DR",
};

export const LAMBDA_DEFAULT = 1.0;

// Tuned relaxation per algorithm, mirrored from the engine's published table.
export const LAMBDA_BEST: Record<AlgorithmKind, number> = {
  cycp: 1.5,
  exparp: 0.8,
  dr: 1.6,
  cycdr: 1.2,
};

// The engine accepts the open interval (0, 2); the slider stays strictly
// inside it so a dragged-to-the-end thumb still posts a valid value.
export const LAMBDA_MIN = 0.005;
export const LAMBDA_MAX = 1.995;

export function clampLambda(value: number): number {
  if (!Number.isFinite(value)) return LAMBDA_DEFAULT;
  return Math.min(LAMBDA_MAX, Math.max(LAMBDA_MIN, value));
}

// Sampling windows, mirrored from the engine.
export const LOCAL_REGION: RegionDoc = { xmin: -10, xmax: 10, ymin: -10, ymax: 10 };
export const GLOBAL_REGION: RegionDoc = { xmin: -100, xmax: 100, ymin: -100, ymax: 100 };

export function regionBounds(choice: "local" | "global"): RegionDoc {
  return choice === "local" ? LOCAL_REGION : GLOBAL_REGION;
}

export interface Pixel {
  px: number;
  py: number;
}

/** Plane point to canvas pixel; y axis flips so region top is row 0. */
export function planeToPixel(
  region: RegionDoc,
  width: number,
  height: number,
  x: number,
  y: number,
): Pixel {
  const px = ((x - region.xmin) / (region.xmax - region.xmin)) * width;
  const py = ((region.ymax - y) / (region.ymax - region.ymin)) * height;
  return { px, py };
}

export function pixelToPlane(
  region: RegionDoc,
  width: number,
  height: number,
  px: number,
  py: number,
): { x: number; y: number } {
  const x = region.xmin + (px / width) * (region.xmax - region.xmin);
  const y = region.ymax - (py / height) * (region.ymax - region.ymin);
  return { x, y };
}

/**
 * Map a mouse event position to drawing-buffer pixels, or null when the
 * position lands outside the canvas. The rect may be zero-sized before
 * layout (and under test DOMs); the drawing buffer size is the fallback.
 */
export function eventToPixel(
  rect: { left: number; top: number; width: number; height: number },
  bufferWidth: number,
  bufferHeight: number,
  clientX: number,
  clientY: number,
): Pixel | null {
  const w = rect.width > 0 ? rect.width : bufferWidth;
  const h = rect.height > 0 ? rect.height : bufferHeight;
  const px = ((clientX - rect.left) * bufferWidth) / w;
  const py = ((clientY - rect.top) * bufferHeight) / h;
  if (px < 0 || py < 0 || px >= bufferWidth || py >= bufferHeight) return null;
  return { px, py };
}

/** Escape-time gray level: 0 solved instantly, 255 never solved. */
export function grayLevel(count: number, cap: number): number {
  return Math.round((255 * count) / cap);
}

export const D_CHART_FLOOR = 1e-8;

/**
 * Chart-space samples for the error curve: x is the iteration index scaled
 * to [0, width], y is log10(d) scaled so the top is the sequence maximum
 * (at least 1) and the bottom is the clip floor.
 */
export function dChartPoints(
  errors: number[],
  width: number,
  height: number,
  floor = D_CHART_FLOOR,
): Pixel[] {
  if (errors.length === 0) return [];
  const logs = errors.map((d) => Math.log10(Math.max(d, floor)));
  const top = Math.max(0, ...logs);
  const bottom = Math.log10(floor);
  const span = top - bottom;
  const dx = errors.length > 1 ? width / (errors.length - 1) : 0;
  return logs.map((v, k) => ({
    px: k * dx,
    py: ((top - v) / span) * height,
  }));
}

/** Vertical position of a reference level (epsilon, say) in the same chart. */
export function dChartLevel(
  errors: number[],
  level: number,
  height: number,
  floor = D_CHART_FLOOR,
): number {
  const logs = errors.map((d) => Math.log10(Math.max(d, floor)));
  const top = Math.max(0, ...logs);
  const bottom = Math.log10(floor);
  return ((top - Math.log10(Math.max(level, floor))) / (top - bottom)) * height;
}
