// Cartographer tab: starts a progressive map job, polls its pages, and
// paints each returned sample as a 2x2 gray dot. A knob change in the store
// detaches the job, so a stale render can never sit under new settings.

import { ApiClient, type RegionDoc } from "./api.js";
import type { Store } from "./state.js";
import { grayLevel, planeToPixel, regionBounds } from "./transforms.js";

// engine default iteration cap; counts arrive in [0, CAP]
const CAP = 1000;

const POLL_INTERVAL_MS = 50;

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

export interface MapRunResult {
  state: "done" | "failed" | "cancelled" | "detached";
  dots: number;
  message: string | null;
}

/** Handle on one progressive run: await `done`, inspect progress, cancel. */
export class MapRun {
  readonly done: Promise<MapRunResult>;
  readonly progressLog: number[] = [];
  private dots = 0;
  private stopped: "cancelled" | "detached" | null = null;
  private resolve!: (r: MapRunResult) => void;

  constructor(
    readonly jobId: string,
    private api: ApiClient,
    private paint: (triples: [number, number, number][]) => void,
    private onProgress: (fraction: number, dots: number) => void,
  ) {
    this.done = new Promise((resolve) => {
      this.resolve = resolve;
    });
  }

  getDots(): number {
    return this.dots;
  }

  /** User-initiated: tells the server, keeps the partial render. */
  async cancel(): Promise<void> {
    if (this.stopped === null) this.stopped = "cancelled";
    try {
      await this.api.cancelMap(this.jobId);
    } catch {
      // job may already be gone; the poll loop still terminates
    }
  }

  /** Store-initiated: the knobs moved on, stop polling quietly. */
  detach(): void {
    if (this.stopped === null) this.stopped = "detached";
  }

  async run(): Promise<void> {
    let from = 0;
    try {
      for (;;) {
        if (this.stopped !== null) {
          this.resolve({ state: this.stopped, dots: this.dots, message: null });
          return;
        }
        const page = await this.api.mapPage(this.jobId, from);
        for (const triples of page.pages) {
          this.paint(triples);
          this.dots += triples.length;
        }
        from = page.next;
        this.progressLog.push(page.progress);
        this.onProgress(page.progress, this.dots);
        if (page.state === "done") {
          this.resolve({ state: "done", dots: this.dots, message: null });
          return;
        }
        if (page.state === "failed") {
          const cancelled = this.stopped === "cancelled" || page.message === "cancelled";
          this.resolve({
            state: cancelled ? "cancelled" : "failed",
            dots: this.dots,
            message: page.message,
          });
          return;
        }
        await sleep(POLL_INTERVAL_MS);
      }
    } catch (err) {
      this.resolve({
        state: "failed",
        dots: this.dots,
        message: err instanceof Error ? err.message : String(err),
      });
    }
  }
}

export class CartoView {
  active: MapRun | null = null;

  constructor(
    private canvas: HTMLCanvasElement,
    private progressBar: HTMLProgressElement,
    private progressText: HTMLElement,
    private store: Store,
    private api: ApiClient,
    private onError: (message: string) => void,
  ) {
    store.subscribe((state, changed) => {
      if (changed.has("mapJobId") && state.mapJobId === null && this.active) {
        this.active.detach();
        this.active = null;
        this.clear();
      }
    });
  }

  private clear(): void {
    let ctx: CanvasRenderingContext2D | null = null;
    try {
      ctx = this.canvas.getContext("2d");
    } catch {
      ctx = null;
    }
    if (ctx) {
      ctx.fillStyle = "#ffffff";
      ctx.fillRect(0, 0, this.canvas.width, this.canvas.height);
    }
    this.progressBar.value = 0;
    this.progressText.textContent = "";
  }

  /** Launch a run with the current knobs. Resolves to the run handle. */
  async start(budget: number, chunk: number): Promise<MapRun | null> {
    const state = this.store.get();
    if (state.constellation === null) {
      this.onError("load a constellation first");
      return null;
    }
    if (this.active) {
      this.active.detach();
      this.active = null;
    }
    this.clear();

    const region = regionBounds(state.region);
    let started;
    try {
      started = await this.api.startMap({
        constellation_id: state.constellation.id,
        algorithm: state.algorithm,
        lambda: state.lambda,
        region: state.region,
        budget,
        chunk,
      });
    } catch (err) {
      this.onError(err instanceof Error ? err.message : String(err));
      return null;
    }

    const run = new MapRun(
      started.job_id,
      this.api,
      (triples) => this.paintTriples(triples, region),
      (fraction, dots) => {
        this.progressBar.value = fraction;
        this.progressText.textContent = `${Math.round(fraction * 100)}% (${dots} samples)`;
      },
    );
    this.active = run;
    this.store.update({ mapJobId: started.job_id, status: `map job ${started.job_id} running` });
    void run.run();
    void run.done.then((result) => {
      if (this.active === run) this.active = null;
      if (result.state === "done") {
        this.store.update({ status: `map job ${run.jobId} done, ${result.dots} samples` });
      } else if (result.state === "cancelled") {
        this.store.update({ status: `map job ${run.jobId} cancelled` });
      } else if (result.state === "failed") {
        this.onError(result.message ?? "map job failed");
      }
    });
    return run;
  }

  async cancelActive(): Promise<void> {
    if (this.active) await this.active.cancel();
  }

  private paintTriples(triples: [number, number, number][], region: RegionDoc): void {
    let ctx: CanvasRenderingContext2D | null = null;
    try {
      ctx = this.canvas.getContext("2d");
    } catch {
      ctx = null;
    }
    if (!ctx) return;
    const w = this.canvas.width;
    const h = this.canvas.height;
    for (const [x, y, count] of triples) {
      const level = grayLevel(count, CAP);
      ctx.fillStyle = `rgb(${level},${level},${level})`;
      const { px, py } = planeToPixel(region, w, h, x, y);
      // 2x2 px so sparse budgets stay visible
      ctx.fillRect(Math.round(px) - 1, Math.round(py) - 1, 2, 2);
    }
  }
}
