// Typed client for the feaslab HTTP API. Every number the UI shows comes
// out of these responses; the client never recomputes engine math.

export interface RegionDoc {
  xmin: number;
  xmax: number;
  ymin: number;
  ymax: number;
}

export interface ConstellationDoc {
  id: string;
  m: number;
  format_version: number;
  kind: string;
  metadata: Record<string, unknown>;
  region: RegionDoc;
  feasible_hint: [number, number] | null;
  sets: [number, number][][];
}

export interface OrbitDoc {
  constellation_id: string;
  algorithm: string;
  lambda: number;
  start: [number, number];
  outcome: "solved" | "exhausted";
  solved_at: number | null;
  iterations: number;
  points: [number, number][];
  monitored: [number, number][];
  errors: number[];
}

export interface MapStartDoc {
  job_id: string;
  budget: number;
  chunk: number;
  pages_expected: number;
}

/** One page poll result; `pages` holds [x, y, count] triples. */
export interface MapPageDoc {
  job_id: string;
  state: "running" | "done" | "failed";
  message: string | null;
  progress: number;
  budget: number;
  chunk: number;
  from: number;
  next: number;
  completed_pages: number;
  pages: [number, number, number][][];
}

export interface SweepDoc {
  constellation_id: string;
  algorithm: string;
  lambdas: number[];
  rates: number[];
  starts_per_lambda: number;
  region: RegionDoc;
  best_lambda: number;
}

export type ConstellationRequest =
  | { kind: "preset"; name: string; seed?: number }
  | {
      kind: "random";
      seed: number;
      num_sets: number;
      max_points_per_set: number;
      region?: RegionDoc;
    }
  | { kind: "circles"; rings: { radius: number; count: number; phase?: number }[][] }
  | { kind: "points"; sets: [number, number][][]; region?: RegionDoc };

export class ApiError extends Error {
  constructor(
    public status: number,
    detail: string,
  ) {
    super(detail);
    this.name = "ApiError";
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private baseUrl = "",
    // injectable for tests; default binds the ambient fetch lazily
    private fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(url: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchImpl(url, init);
    } catch (err) {
      throw new ApiError(0, `service unreachable: ${String(err)}`);
    }
    const text = await response.text();
    if (!response.ok) {
      let detail = text;
      try {
        detail = JSON.parse(text).detail ?? text;
      } catch {
        // non-JSON error body, keep raw text
      }
      throw new ApiError(response.status, String(detail));
    }
    return JSON.parse(text) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(this.baseUrl + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  createConstellation(body: ConstellationRequest): Promise<ConstellationDoc> {
    return this.post("/api/constellation", body);
  }

  runOrbit(body: {
    constellation_id: string;
    algorithm: string;
    lambda: number;
    start: [number, number];
  }): Promise<OrbitDoc> {
    return this.post("/api/orbit", body);
  }

  startMap(body: {
    constellation_id: string;
    algorithm: string;
    lambda: number;
    region: string | RegionDoc;
    budget: number;
    chunk: number;
  }): Promise<MapStartDoc> {
    return this.post("/api/map/start", body);
  }

  mapPage(jobId: string, from: number): Promise<MapPageDoc> {
    return this.request<MapPageDoc>(
      `${this.baseUrl}/api/map/${encodeURIComponent(jobId)}/page?from=${from}`,
    );
  }

  cancelMap(jobId: string): Promise<MapPageDoc> {
    return this.request<MapPageDoc>(`${this.baseUrl}/api/map/${encodeURIComponent(jobId)}`, {
      method: "DELETE",
    });
  }

  runSweep(body: {
    constellation_id: string;
    algorithm: string;
    n_lambda: number;
    n_starts: number;
    region: string | RegionDoc;
  }): Promise<SweepDoc> {
    return this.post("/api/sweep", body);
  }
}
