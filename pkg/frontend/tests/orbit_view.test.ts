import { beforeEach, describe, expect, it, vi } from "vitest";

import type { ApiClient, OrbitDoc } from "../src/api.js";
import { ApiError } from "../src/api.js";
import { OrbitView, orbitPolyline, statusText } from "../src/orbit_view.js";
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
    feasible_hint: [0, 0] as [number, number],
    sets: [[[0, 0]], [[1, 1]], [[2, 2]]] as [number, number][][],
  };
}

function traceDoc(over: Partial<OrbitDoc> = {}): OrbitDoc {
  return {
    constellation_id: "abc123",
    algorithm: "cycp",
    lambda: 1.0,
    start: [4, 4],
    outcome: "solved",
    solved_at: 2,
    iterations: 2,
    points: [
      [4, 4],
      [1, 1],
      [0, 0],
    ],
    monitored: [
      [4, 4],
      [1, 1],
      [0, 0],
    ],
    errors: [1, 0.3, 0],
    ...over,
  };
}

function setup(orbitResult: () => Promise<OrbitDoc>) {
  const doc = document;
  const canvas = doc.createElement("canvas");
  canvas.width = 480;
  canvas.height = 480;
  const chart = doc.createElement("canvas");
  chart.width = 480;
  chart.height = 140;
  const status = doc.createElement("div");
  doc.body.append(canvas, chart, status);

  const store = new Store();
  const runOrbit = vi.fn(orbitResult);
  const api = { runOrbit } as unknown as ApiClient;
  const errors: string[] = [];
  const view = new OrbitView(canvas, chart, status, store, api, (m) => errors.push(m));
  return { canvas, status, store, view, runOrbit, errors };
}

beforeEach(() => {
  document.body.innerHTML = "";
});

describe("orbitPolyline", () => {
  it("emits exactly one vertex per trace point", () => {
    const trace = traceDoc();
    const line = orbitPolyline(trace, LOCAL_REGION, 480, 480);
    expect(line).toHaveLength(trace.points.length);
  });
});

describe("statusText", () => {
  it("reports both outcomes", () => {
    expect(statusText(traceDoc())).toBe("Solved at 2");
    expect(
      statusText(traceDoc({ outcome: "exhausted", solved_at: null, iterations: 1000 })),
    ).toBe("Exhausted after 1000 iterations");
  });
});

describe("OrbitView clicks", () => {
  it("ignores clicks when no constellation is loaded", async () => {
    const { view, runOrbit } = setup(() => Promise.resolve(traceDoc()));
    await view.clickAt(100, 100);
    expect(runOrbit).not.toHaveBeenCalled();
  });

  it("converts the click to plane coordinates and stores the trace", async () => {
    const { view, store, runOrbit, status } = setup(() => Promise.resolve(traceDoc()));
    store.update({ constellation: constellationDoc() });
    await view.clickAt(240, 240); // buffer center -> plane origin
    expect(runOrbit).toHaveBeenCalledTimes(1);
    const body = runOrbit.mock.calls[0][0] as { start: [number, number] };
    expect(body.start[0]).toBeCloseTo(0, 10);
    expect(body.start[1]).toBeCloseTo(0, 10);
    expect(store.get().trace).not.toBeNull();
    expect(view.lastPolyline).toHaveLength(3);
    expect(status.textContent).toBe("Solved at 2");
  });

  it("ignores clicks outside the canvas", async () => {
    const { view, store, runOrbit } = setup(() => Promise.resolve(traceDoc()));
    store.update({ constellation: constellationDoc() });
    await view.clickAt(481, 10);
    await view.clickAt(-1, 10);
    expect(runOrbit).not.toHaveBeenCalled();
  });

  it("surfaces API failures and leaves state unchanged", async () => {
    const { view, store, errors } = setup(() =>
      Promise.reject(new ApiError(0, "service unreachable: down")),
    );
    store.update({ constellation: constellationDoc() });
    await view.clickAt(100, 100);
    expect(errors).toHaveLength(1);
    expect(errors[0]).toMatch(/unreachable/);
    expect(store.get().trace).toBeNull();
  });

  it("drops a response that arrives after the constellation changed", async () => {
    let release!: (t: OrbitDoc) => void;
    const gate = new Promise<OrbitDoc>((resolve) => {
      release = resolve;
    });
    const { view, store } = setup(() => gate);
    store.update({ constellation: constellationDoc() });
    const pending = view.clickAt(100, 100);
    store.update({ constellation: { ...constellationDoc(), id: "other" } });
    release(traceDoc());
    await pending;
    expect(store.get().trace).toBeNull();
  });

  it("fires from a real click event through the DOM", async () => {
    const { canvas, view, store } = setup(() => Promise.resolve(traceDoc()));
    store.update({ constellation: constellationDoc() });
    canvas.dispatchEvent(new MouseEvent("click", { clientX: 120, clientY: 360 }));
    expect(view.inflight).not.toBeNull();
    await view.inflight;
    expect(store.get().trace).not.toBeNull();
  });
});
