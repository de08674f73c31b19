import { describe, expect, it } from "vitest";

import {
  clampLambda,
  dChartLevel,
  dChartPoints,
  eventToPixel,
  GLOBAL_REGION,
  grayLevel,
  LAMBDA_BEST,
  LAMBDA_MAX,
  LAMBDA_MIN,
  LOCAL_REGION,
  pixelToPlane,
  planeToPixel,
  regionBounds,
} from "../src/transforms.js";

describe("pixel/plane transforms", () => {
  it("round-trips plane -> pixel -> plane within one pixel of error", () => {
    const w = 480;
    const h = 480;
    const pixelTolX = (LOCAL_REGION.xmax - LOCAL_REGION.xmin) / w;
    const pixelTolY = (LOCAL_REGION.ymax - LOCAL_REGION.ymin) / h;
    for (let i = 0; i < 500; i++) {
      const x = -10 + 20 * ((i * 0.6180339887498949) % 1);
      const y = -10 + 20 * ((i * 0.4142135623730951) % 1);
      const { px, py } = planeToPixel(LOCAL_REGION, w, h, x, y);
      const back = pixelToPlane(LOCAL_REGION, w, h, px, py);
      expect(Math.abs(back.x - x)).toBeLessThanOrEqual(pixelTolX);
      expect(Math.abs(back.y - y)).toBeLessThanOrEqual(pixelTolY);
    }
  });

  it("round-trips pixel -> plane -> pixel within one pixel", () => {
    const w = 480;
    const h = 320;
    for (let px = 0; px < w; px += 37) {
      for (let py = 0; py < h; py += 29) {
        const { x, y } = pixelToPlane(GLOBAL_REGION, w, h, px, py);
        const back = planeToPixel(GLOBAL_REGION, w, h, x, y);
        expect(Math.abs(back.px - px)).toBeLessThanOrEqual(1);
        expect(Math.abs(back.py - py)).toBeLessThanOrEqual(1);
      }
    }
  });

  it("flips y so the region top is pixel row 0", () => {
    const top = planeToPixel(LOCAL_REGION, 100, 100, 0, 10);
    const bottom = planeToPixel(LOCAL_REGION, 100, 100, 0, -10);
    expect(top.py).toBe(0);
    expect(bottom.py).toBe(100);
  });

  it("maps region corners to canvas corners", () => {
    const { px, py } = planeToPixel(LOCAL_REGION, 200, 100, -10, -10);
    expect(px).toBe(0);
    expect(py).toBe(100);
  });
});

describe("eventToPixel", () => {
  const rect = { left: 10, top: 20, width: 100, height: 100 };

  it("maps client coordinates into the drawing buffer", () => {
    const hit = eventToPixel(rect, 200, 200, 60, 70);
    expect(hit).not.toBeNull();
    expect(hit!.px).toBeCloseTo(100);
    expect(hit!.py).toBeCloseTo(100);
  });

  it("returns null outside the canvas", () => {
    expect(eventToPixel(rect, 200, 200, 5, 70)).toBeNull();
    expect(eventToPixel(rect, 200, 200, 60, 121)).toBeNull();
    expect(eventToPixel(rect, 200, 200, 111, 70)).toBeNull();
  });

  it("falls back to buffer size when the rect has no layout", () => {
    const flat = { left: 0, top: 0, width: 0, height: 0 };
    const hit = eventToPixel(flat, 480, 480, 240, 120);
    expect(hit).toEqual({ px: 240, py: 120 });
  });
});

describe("lambda helpers", () => {
  it("clamps to the slider range", () => {
    expect(clampLambda(0)).toBe(LAMBDA_MIN);
    expect(clampLambda(2)).toBe(LAMBDA_MAX);
    expect(clampLambda(1.3)).toBe(1.3);
    expect(clampLambda(Number.NaN)).toBe(1.0);
  });

  it("keeps the slider range strictly inside (0, 2)", () => {
    expect(LAMBDA_MIN).toBeGreaterThan(0);
    expect(LAMBDA_MAX).toBeLessThan(2);
  });

  it("carries the tuned-lambda table", () => {
    expect(LAMBDA_BEST).toEqual({ cycp: 1.5, exparp: 0.8, dr: 1.6, cycdr: 1.2 });
  });
});

describe("gray mapping", () => {
  it("matches the escape-time contract endpoints", () => {
    expect(grayLevel(0, 1000)).toBe(0);
    expect(grayLevel(1000, 1000)).toBe(255);
    expect(grayLevel(500, 1000)).toBe(128);
  });
});

describe("d chart", () => {
  it("clips at the floor and keeps one sample per error", () => {
    const errors = [1.0, 0.1, 1e-12];
    const pts = dChartPoints(errors, 300, 100);
    expect(pts).toHaveLength(3);
    expect(pts[0].py).toBe(0);
    expect(pts[2].py).toBe(100); // clipped to the 1e-8 floor
    expect(pts[0].px).toBe(0);
    expect(pts[2].px).toBe(300);
  });

  it("places epsilon above the floor", () => {
    const errors = [1.0, 0.5, 0.25];
    const eps = dChartLevel(errors, 1e-6, 100);
    expect(eps).toBeGreaterThan(0);
    expect(eps).toBeLessThan(100);
  });

  it("handles a single-point trace", () => {
    const pts = dChartPoints([1.0], 300, 100);
    expect(pts).toHaveLength(1);
    expect(pts[0].px).toBe(0);
  });
});

describe("regionBounds", () => {
  it("selects the sampling window", () => {
    expect(regionBounds("local").xmax).toBe(10);
    expect(regionBounds("global").xmax).toBe(100);
  });
});
