// Single mutable view state with subscription. Changing any run knob
// (constellation, algorithm, lambda, region) invalidates results computed
// under the old knobs: the trace is dropped and the active map job is
// detached so the views can clear themselves.

import type { ConstellationDoc, OrbitDoc } from "./api.js";
import { clampLambda, LAMBDA_DEFAULT, type AlgorithmKind } from "./transforms.js";

export type RegionChoice = "local" | "global";

export interface ViewState {
  constellation: ConstellationDoc | null;
  algorithm: AlgorithmKind;
  lambda: number;
  region: RegionChoice;
  trace: OrbitDoc | null;
  mapJobId: string | null;
  status: string;
}

export type Listener = (state: ViewState, changed: Set<keyof ViewState>) => void;

const KNOBS: (keyof ViewState)[] = ["constellation", "algorithm", "lambda", "region"];

export class Store {
  private state: ViewState = {
    constellation: null,
    algorithm: "cycp",
    lambda: LAMBDA_DEFAULT,
    region: "local",
    trace: null,
    mapJobId: null,
    status: "no constellation loaded",
  };
  private listeners = new Set<Listener>();

  get(): ViewState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  update(patch: Partial<ViewState>): void {
    if ("lambda" in patch && patch.lambda !== undefined) {
      patch = { ...patch, lambda: clampLambda(patch.lambda) };
    }
    const changed = new Set<keyof ViewState>();
    for (const key of Object.keys(patch) as (keyof ViewState)[]) {
      if (this.state[key] !== patch[key]) changed.add(key);
    }
    if (changed.size === 0) return;

    const next = { ...this.state, ...patch };
    if (KNOBS.some((k) => changed.has(k))) {
      // stale results must never be shown against new knobs
      if (next.trace !== null && !changed.has("trace")) {
        next.trace = null;
        changed.add("trace");
      }
      if (next.mapJobId !== null && !changed.has("mapJobId")) {
        next.mapJobId = null;
        changed.add("mapJobId");
      }
    }
    this.state = next;
    for (const listener of this.listeners) listener(next, changed);
  }
}
