// Main-tab view: the plane canvas (constellation + click-to-orbit) and the
// error chart under it. The view computes pixel geometry itself but every
// number it draws came from an API response.

import { ApiClient, type OrbitDoc, type RegionDoc } from "./api.js";
import type { Store } from "./state.js";
import {
  dChartLevel,
  dChartPoints,
  eventToPixel,
  type Pixel,
  pixelToPlane,
  planeToPixel,
  regionBounds,
} from "./transforms.js";

const SET_COLORS = [
  "#2470c2",
  "#c2442a",
  "#22883e",
  "#8d44c2",
  "#c2901d",
  "#18949c",
  "#b03a7e",
  "#657a1f",
  "#8a5a3a",
  "#445ac2",
];

const EPSILON_LINE = 1e-6;

function context2d(canvas: HTMLCanvasElement): CanvasRenderingContext2D | null {
  try {
    return canvas.getContext("2d");
  } catch {
    return null; // test DOMs have no raster backend
  }
}

/** Pixel vertices of the orbit polyline; one vertex per trace point. */
export function orbitPolyline(
  trace: OrbitDoc,
  region: RegionDoc,
  width: number,
  height: number,
): Pixel[] {
  return trace.points.map(([x, y]) => planeToPixel(region, width, height, x, y));
}

export function statusText(trace: OrbitDoc): string {
  if (trace.outcome === "solved") return `Solved at ${trace.solved_at}`;
  return `Exhausted after ${trace.iterations} iterations`;
}

export class OrbitView {
  lastPolyline: Pixel[] | null = null;
  inflight: Promise<void> | null = null;

  constructor(
    private canvas: HTMLCanvasElement,
    private chart: HTMLCanvasElement,
    private statusEl: HTMLElement,
    private store: Store,
    private api: ApiClient,
    private onError: (message: string) => void,
  ) {
    canvas.addEventListener("click", (ev) => {
      this.inflight = this.clickAt(ev.clientX, ev.clientY);
    });
    store.subscribe(() => this.render());
  }

  private viewRegion(): RegionDoc {
    return regionBounds(this.store.get().region);
  }

  /** Click-to-orbit: pixel to plane, ask the engine, store the trace. */
  async clickAt(clientX: number, clientY: number): Promise<void> {
    const state = this.store.get();
    if (state.constellation === null) return;
    const rect = this.canvas.getBoundingClientRect();
    const hit = eventToPixel(rect, this.canvas.width, this.canvas.height, clientX, clientY);
    if (hit === null) return;
    const region = this.viewRegion();
    const { x, y } = pixelToPlane(region, this.canvas.width, this.canvas.height, hit.px, hit.py);
    try {
      const trace = await this.api.runOrbit({
        constellation_id: state.constellation.id,
        algorithm: state.algorithm,
        lambda: state.lambda,
        start: [x, y],
      });
      // knobs may have moved while the request was out; drop stale answers
      const now = this.store.get();
      if (now.constellation?.id !== trace.constellation_id) return;
      this.store.update({ trace, status: statusText(trace) });
    } catch (err) {
      this.onError(err instanceof Error ? err.message : String(err));
    }
  }

  render(): void {
    const state = this.store.get();
    this.statusEl.textContent = state.status;
    const region = this.viewRegion();
    const w = this.canvas.width;
    const h = this.canvas.height;

    this.lastPolyline = state.trace ? orbitPolyline(state.trace, region, w, h) : null;

    const ctx = context2d(this.canvas);
    if (ctx) {
      ctx.fillStyle = "#ffffff";
      ctx.fillRect(0, 0, w, h);
      this.drawAxes(ctx, region, w, h);
      if (state.constellation) this.drawSets(ctx, state.constellation.sets, region, w, h);
      if (state.trace && this.lastPolyline) this.drawOrbit(ctx, state.trace, region, w, h);
    }
    this.renderChart(state.trace);
  }

  private drawAxes(
    ctx: CanvasRenderingContext2D,
    region: RegionDoc,
    w: number,
    h: number,
  ): void {
    const origin = planeToPixel(region, w, h, 0, 0);
    ctx.strokeStyle = "#d8d8d8";
    ctx.lineWidth = 1;
    ctx.beginPath();
    ctx.moveTo(0, origin.py);
    ctx.lineTo(w, origin.py);
    ctx.moveTo(origin.px, 0);
    ctx.lineTo(origin.px, h);
    ctx.stroke();
    ctx.fillStyle = "#888888";
    ctx.font = "11px sans-serif";
    ctx.fillText(String(region.xmax), w - 26, origin.py - 4);
    ctx.fillText(String(region.ymax), origin.px + 4, 12);
  }

  private drawSets(
    ctx: CanvasRenderingContext2D,
    sets: [number, number][][],
    region: RegionDoc,
    w: number,
    h: number,
  ): void {
    sets.forEach((points, i) => {
      ctx.fillStyle = SET_COLORS[i % SET_COLORS.length];
      for (const [x, y] of points) {
        const { px, py } = planeToPixel(region, w, h, x, y);
        ctx.beginPath();
        ctx.arc(px, py, 4, 0, 2 * Math.PI);
        ctx.fill();
      }
    });
  }

  private drawOrbit(
    ctx: CanvasRenderingContext2D,
    trace: OrbitDoc,
    region: RegionDoc,
    w: number,
    h: number,
  ): void {
    const line = this.lastPolyline!;
    ctx.strokeStyle = "#111111";
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    line.forEach((p, i) => {
      if (i === 0) ctx.moveTo(p.px, p.py);
      else ctx.lineTo(p.px, p.py);
    });
    ctx.stroke();

    // monitored sequence as hollow markers over the governing polyline
    ctx.strokeStyle = "#e08a00";
    ctx.lineWidth = 1;
    for (const [x, y] of trace.monitored) {
      const { px, py } = planeToPixel(region, w, h, x, y);
      ctx.beginPath();
      ctx.arc(px, py, 3, 0, 2 * Math.PI);
      ctx.stroke();
    }

    const start = planeToPixel(region, w, h, trace.start[0], trace.start[1]);
    ctx.fillStyle = "#111111";
    ctx.beginPath();
    ctx.arc(start.px, start.py, 4, 0, 2 * Math.PI);
    ctx.fill();
  }

  private renderChart(trace: OrbitDoc | null): void {
    const ctx = context2d(this.chart);
    if (!ctx) return;
    const w = this.chart.width;
    const h = this.chart.height;
    ctx.fillStyle = "#fafafa";
    ctx.fillRect(0, 0, w, h);
    if (!trace || trace.errors.length === 0) return;

    const eps = dChartLevel(trace.errors, EPSILON_LINE, h);
    ctx.strokeStyle = "#c2442a";
    ctx.setLineDash([4, 3]);
    ctx.beginPath();
    ctx.moveTo(0, eps);
    ctx.lineTo(w, eps);
    ctx.stroke();
    ctx.setLineDash([]);

    const pts = dChartPoints(trace.errors, w, h);
    ctx.strokeStyle = "#2470c2";
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    pts.forEach((p, i) => {
      if (i === 0) ctx.moveTo(p.px, p.py);
      else ctx.lineTo(p.px, p.py);
    });
    ctx.stroke();
  }
}
