import { beforeEach, describe, expect, it, vi } from "vitest";

import type { ApiClient, MapPageDoc } from "../src/api.js";
import { CartoView, MapRun } from "../src/carto_view.js";
import { Store } from "../src/state.js";
import { LOCAL_REGION } from "../src/transforms.js";

function constellationDoc() {
  return {
    id: "abc123",
    m: 3,
    format_version: 1,
    kind: "constellation",
    metadata: {},
    region: { ...LOCAL_REGION },
    feasible_hint: null,
    sets: [[[0, 0]]] as [number, number][][],
  };
}

/** Fake job server: releases `perPoll` pages per page request. */
function fakeJob(budget: number, chunk: number, perPoll = 2) {
  const allPages: [number, number, number][][] = [];
  let made = 0;
  while (made < budget) {
    const n = Math.min(chunk, budget - made);
    const page: [number, number, number][] = [];
    for (let i = 0; i < n; i++) page.push([-9 + 0.001 * (made + i), 3, (made + i) % 1001]);
    allPages.push(page);
    made += n;
  }
  const total = allPages.length;
  let released = 0;
  const cancelMap = vi.fn(async (): Promise<MapPageDoc> => {
    return {
      job_id: "job-9",
      state: "failed",
      message: "cancelled",
      progress: released / total,
      budget,
      chunk,
      from: released,
      next: released,
      completed_pages: released,
      pages: [],
    };
  });
  const mapPage = vi.fn(async (jobId: string, from: number): Promise<MapPageDoc> => {
    released = Math.min(total, released + perPoll);
    const fraction = Math.min(1, (released * chunk) / budget);
    return {
      job_id: jobId,
      state: released >= total ? "done" : "running",
      message: null,
      progress: fraction,
      budget,
      chunk,
      from,
      next: released,
      completed_pages: released,
      pages: allPages.slice(from, released),
    };
  });
  const startMap = vi.fn(async () => ({
    job_id: "job-9",
    budget,
    chunk,
    pages_expected: total,
  }));
  return { api: { startMap, mapPage, cancelMap } as unknown as ApiClient, startMap, mapPage, cancelMap };
}

function buildView(api: ApiClient, store: Store) {
  const canvas = document.createElement("canvas");
  canvas.width = 480;
  canvas.height = 480;
  const bar = document.createElement("progress");
  const text = document.createElement("span");
  document.body.append(canvas, bar, text);
  const errors: string[] = [];
  const view = new CartoView(canvas, bar, text, store, api, (m) => errors.push(m));
  return { view, errors, text };
}

beforeEach(() => {
  document.body.innerHTML = "";
});

describe("MapRun", () => {
  it("collects every page, keeps progress monotone, counts all dots", async () => {
    const { api } = fakeJob(1000, 100, 3);
    const painted: number[] = [];
    const run = new MapRun("job-9", api, (t) => painted.push(t.length), () => {});
    await run.run();
    const result = await run.done;
    expect(result.state).toBe("done");
    expect(result.dots).toBe(1000);
    expect(run.getDots()).toBe(1000);
    expect(painted.reduce((a, b) => a + b, 0)).toBe(1000);
    for (let i = 1; i < run.progressLog.length; i++) {
      expect(run.progressLog[i]).toBeGreaterThanOrEqual(run.progressLog[i - 1]);
    }
    expect(run.progressLog.at(-1)).toBe(1);
  });

  it("handles a budget that is not a multiple of the chunk", async () => {
    const { api } = fakeJob(250, 100);
    const run = new MapRun("job-9", api, () => {}, () => {});
    await run.run();
    expect((await run.done).dots).toBe(250);
  });

  it("cancel tells the server and resolves cancelled", async () => {
    const { api, cancelMap } = fakeJob(1000, 100, 1);
    const run = new MapRun("job-9", api, () => {}, () => {});
    const running = run.run();
    await run.cancel();
    await running;
    expect((await run.done).state).toBe("cancelled");
    expect(cancelMap).toHaveBeenCalledTimes(1);
  });

  it("reports poll failures", async () => {
    const api = {
      mapPage: vi.fn(async () => {
        throw new Error("boom");
      }),
    } as unknown as ApiClient;
    const run = new MapRun("job-9", api, () => {}, () => {});
    await run.run();
    const result = await run.done;
    expect(result.state).toBe("failed");
    expect(result.message).toMatch(/boom/);
  });
});

describe("CartoView", () => {
  it("starts a job with the current knobs and finishes", async () => {
    const { api, startMap } = fakeJob(400, 100);
    const store = new Store();
    store.update({ constellation: constellationDoc(), algorithm: "dr", lambda: 1.6 });
    const { view, text } = buildView(api, store);
    const run = await view.start(400, 100);
    expect(run).not.toBeNull();
    const body = startMap.mock.calls[0][0] as Record<string, unknown>;
    expect(body.algorithm).toBe("dr");
    expect(body.lambda).toBe(1.6);
    expect(body.region).toBe("local");
    expect(body.budget).toBe(400);
    const result = await run!.done;
    expect(result.state).toBe("done");
    expect(store.get().status).toMatch(/done, 400 samples/);
    expect(text.textContent).toMatch(/100%/);
  });

  it("refuses to start without a constellation", async () => {
    const { api } = fakeJob(100, 10);
    const store = new Store();
    const { view, errors } = buildView(api, store);
    expect(await view.start(100, 10)).toBeNull();
    expect(errors).toHaveLength(1);
  });

  it("detaches the active run when a knob changes", async () => {
    const { api } = fakeJob(10000, 100, 1); // 100 pages, slow release
    const store = new Store();
    store.update({ constellation: constellationDoc() });
    const { view } = buildView(api, store);
    const run = await view.start(10000, 100);
    expect(store.get().mapJobId).toBe("job-9");
    await new Promise((r) => setTimeout(r, 10)); // let the first poll land
    store.update({ lambda: 1.4 });
    const result = await run!.done;
    expect(result.state).toBe("detached");
    expect(view.active).toBeNull();
    expect(store.get().mapJobId).toBeNull();
  });
});
