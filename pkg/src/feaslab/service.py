"""Local HTTP API: constellation registry, orbits, sweeps, progressive maps.

State is in-memory only; restarting the service clears every registered
constellation and job.  Endpoint payloads are plain JSON whose floats are the
shortest round-trip decimals of the underlying binary64 values, so a client
that re-parses them sees exactly the engine's numbers.
"""

from __future__ import annotations

import math
import threading
from typing import Any

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field

from .algorithms import (
    DEFAULT_EPSILON,
    DEFAULT_MAX_ITERATIONS,
    AlgorithmConfig,
    AlgorithmKind,
    governing_point,
    run_orbit,
)
from .constellations import (
    REFERENCE_SEEDS,
    CircleSpec,
    ConstellationPreset,
    RandomSpec,
    Ring,
    circles_constellation,
    preset_spec,
    random_constellation,
)
from .experiments import lambda_sweep, pick_best_lambda, progressive_cartographer
from .geometry import (
    GLOBAL_REGION,
    LOCAL_REGION,
    Constellation,
    FinitePointSet,
    Point,
    Region,
)
from .io_formats import constellation_to_dict

__all__ = ["create_app"]


class RegionBody(BaseModel):
    xmin: float
    xmax: float
    ymin: float
    ymax: float


class RingBody(BaseModel):
    radius: float
    count: int
    phase: float = 0.0


class ConstellationBody(BaseModel):
    """One of four creation recipes, discriminated by ``kind``."""

    kind: str
    name: str | None = None
    seed: int | None = None
    num_sets: int | None = None
    max_points_per_set: int | None = None
    region: RegionBody | None = None
    rings: list[list[RingBody]] | None = None
    sets: list[list[tuple[float, float]]] | None = None


class OrbitBody(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    constellation_id: str
    algorithm: str
    lam: float = Field(default=1.0, alias="lambda")
    start: tuple[float, float]
    epsilon: float = DEFAULT_EPSILON
    max_iterations: int = DEFAULT_MAX_ITERATIONS


class MapStartBody(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    constellation_id: str
    algorithm: str
    lam: float = Field(default=1.0, alias="lambda")
    region: str | RegionBody = "local"
    budget: int
    chunk: int = 500
    epsilon: float = DEFAULT_EPSILON
    max_iterations: int = DEFAULT_MAX_ITERATIONS


class SweepBody(BaseModel):
    constellation_id: str
    algorithm: str
    n_lambda: int = 200
    n_starts: int = 5000
    region: str | RegionBody = "local"


class MapJob:
    """A progressive cartography run owned by a background thread."""

    def __init__(self, job_id: str, constellation_id: str, budget: int, chunk: int):
        self.id = job_id
        self.constellation_id = constellation_id
        self.budget = budget
        self.chunk = chunk
        self.lock = threading.Lock()
        self.cancel_event = threading.Event()
        self.pages: list[list[list[float]]] = []
        self.progress = 0.0
        self.state = "running"
        self.message: str | None = None
        self.thread: threading.Thread | None = None

    def cancel(self):
        with self.lock:
            self.cancel_event.set()
            if self.state == "running":
                self.state = "failed"
                self.message = "cancelled"

    def snapshot(self, start: int) -> dict:
        with self.lock:
            return {
                "job_id": self.id,
                "state": self.state,
                "message": self.message,
                "progress": self.progress,
                "budget": self.budget,
                "chunk": self.chunk,
                "from": start,
                "next": len(self.pages),
                "completed_pages": len(self.pages),
                "pages": [list(p) for p in self.pages[start:]],
            }

    @property
    def completed_pages(self) -> int:
        with self.lock:
            return len(self.pages)


def _bad_request(message: str) -> HTTPException:
    return HTTPException(status_code=400, detail=message)


def _parse_kind(tag: str) -> AlgorithmKind:
    try:
        return AlgorithmKind.parse(tag)
    except ValueError as exc:
        raise _bad_request(str(exc)) from exc


def _parse_region(value: str | RegionBody) -> Region:
    if isinstance(value, RegionBody):
        return Region(value.xmin, value.xmax, value.ymin, value.ymax)
    if value == "local":
        return LOCAL_REGION
    if value == "global":
        return GLOBAL_REGION
    raise _bad_request(f"region must be 'local', 'global', or bounds, got {value!r}")


def _build_constellation(body: ConstellationBody) -> Constellation:
    if body.kind == "preset":
        if body.name is None:
            raise ValueError("preset body needs a 'name'")
        preset = ConstellationPreset.parse(body.name)
        seed = REFERENCE_SEEDS[preset] if body.seed is None else body.seed
        return random_constellation(preset_spec(preset, seed=seed))
    if body.kind == "random":
        if body.seed is None or body.num_sets is None or body.max_points_per_set is None:
            raise ValueError("random body needs seed, num_sets, max_points_per_set")
        region = LOCAL_REGION if body.region is None else _parse_region(body.region)
        return random_constellation(
            RandomSpec(
                seed=body.seed,
                num_sets=body.num_sets,
                max_points_per_set=body.max_points_per_set,
                region=region,
            )
        )
    if body.kind == "circles":
        if not body.rings:
            raise ValueError("circles body needs 'rings': one ring list per set")
        spec = CircleSpec(
            sets=tuple(
                tuple(Ring(radius=r.radius, count=r.count, phase=r.phase) for r in ring_list)
                for ring_list in body.rings
            )
        )
        return circles_constellation(spec)
    if body.kind == "points":
        if not body.sets:
            raise ValueError("points body needs 'sets': one point list per set")
        sets = [FinitePointSet([Point(x, y) for x, y in s]) for s in body.sets]
        if body.region is not None:
            region = _parse_region(body.region)
        else:
            from .geometry import bounding_region

            region = bounding_region(sets)
        return Constellation(sets, region=region, provenance={"generator": "points"})
    raise ValueError(f"unknown constellation kind {body.kind!r}")


def create_app(static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="feaslab", docs_url=None, redoc_url=None)

    registry: dict[str, Constellation] = {}
    jobs: dict[str, MapJob] = {}
    active_job_by_constellation: dict[str, str] = {}
    state_lock = threading.Lock()
    counter = {"n": 0}

    @app.exception_handler(RequestValidationError)
    async def handle_validation(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    def get_constellation(cid: str) -> Constellation:
        with state_lock:
            constellation = registry.get(cid)
        if constellation is None:
            raise HTTPException(status_code=404, detail=f"unknown constellation {cid!r}")
        return constellation

    @app.post("/api/constellation")
    def post_constellation(body: ConstellationBody) -> dict:
        try:
            constellation = _build_constellation(body)
        except (ValueError, KeyError) as exc:
            raise _bad_request(str(exc)) from exc
        cid = constellation.content_id()
        with state_lock:
            registry[cid] = constellation
        doc: dict[str, Any] = constellation_to_dict(constellation)
        doc["id"] = cid
        doc["m"] = constellation.m
        return doc

    @app.post("/api/orbit")
    def post_orbit(body: OrbitBody) -> dict:
        constellation = get_constellation(body.constellation_id)
        kind = _parse_kind(body.algorithm)
        try:
            config = AlgorithmConfig(
                kind=kind,
                lam=body.lam,
                epsilon=body.epsilon,
                max_iterations=body.max_iterations,
            )
            trace = run_orbit(config, constellation, Point(*body.start))
        except ValueError as exc:
            raise _bad_request(str(exc)) from exc
        points = [governing_point(s) for s in trace.governing]
        return {
            "constellation_id": body.constellation_id,
            "algorithm": kind.value,
            "lambda": config.lam,
            "start": [trace.start.x, trace.start.y],
            "outcome": "solved" if trace.solved else "exhausted",
            "solved_at": trace.solved_at,
            "iterations": trace.iterations,
            "points": [[p.x, p.y] for p in points],
            "monitored": [[p.x, p.y] for p in trace.monitored],
            "errors": list(trace.errors),
        }

    @app.post("/api/map/start")
    def post_map_start(body: MapStartBody) -> dict:
        constellation = get_constellation(body.constellation_id)
        kind = _parse_kind(body.algorithm)
        try:
            config = AlgorithmConfig(
                kind=kind,
                lam=body.lam,
                epsilon=body.epsilon,
                max_iterations=body.max_iterations,
            )
            region = _parse_region(body.region)
            if body.chunk < 1 or body.budget < body.chunk:
                raise ValueError("need budget >= chunk >= 1")
        except ValueError as exc:
            raise _bad_request(str(exc)) from exc

        with state_lock:
            counter["n"] += 1
            job_id = f"job-{counter['n']}"
            previous_id = active_job_by_constellation.get(body.constellation_id)
            previous = jobs.get(previous_id) if previous_id else None
            job = MapJob(job_id, body.constellation_id, body.budget, body.chunk)
            jobs[job_id] = job
            active_job_by_constellation[body.constellation_id] = job_id
        if previous is not None:
            previous.cancel()

        def run():
            try:
                stream = progressive_cartographer(
                    config, constellation, region, body.budget, body.chunk
                )
                done = 0
                for batch in stream:
                    if job.cancel_event.is_set():
                        return
                    done += len(batch)
                    with job.lock:
                        if job.state != "running":
                            return
                        job.pages.append([[p.x, p.y, int(c)] for p, c in batch])
                        job.progress = done / body.budget
                with job.lock:
                    if job.state == "running":
                        job.state = "done"
                        job.progress = 1.0
            except Exception as exc:
                with job.lock:
                    if job.state == "running":
                        job.state = "failed"
                        job.message = str(exc)

        job.thread = threading.Thread(target=run, name=job_id, daemon=True)
        job.thread.start()
        return {
            "job_id": job_id,
            "budget": body.budget,
            "chunk": body.chunk,
            "pages_expected": math.ceil(body.budget / body.chunk),
        }

    def get_job(job_id: str) -> MapJob:
        with state_lock:
            job = jobs.get(job_id)
        if job is None:
            raise HTTPException(status_code=404, detail=f"unknown job {job_id!r}")
        return job

    @app.get("/api/map/{job_id}/page")
    def get_map_page(job_id: str, request: Request) -> dict:
        raw = request.query_params.get("from", "0")
        try:
            start = int(raw)
        except ValueError:
            raise _bad_request(f"'from' must be an integer, got {raw!r}") from None
        if start < 0:
            raise _bad_request("'from' must be nonnegative")
        job = get_job(job_id)
        if start > job.completed_pages:
            raise HTTPException(
                status_code=409,
                detail=f"page {start} beyond progress ({job.completed_pages} completed)",
            )
        return job.snapshot(start)

    @app.delete("/api/map/{job_id}")
    def delete_map(job_id: str) -> dict:
        job = get_job(job_id)
        job.cancel()
        return job.snapshot(job.completed_pages)

    @app.post("/api/sweep")
    def post_sweep(body: SweepBody) -> dict:
        constellation = get_constellation(body.constellation_id)
        kind = _parse_kind(body.algorithm)
        try:
            region = _parse_region(body.region)
            if body.n_lambda < 1 or body.n_starts < 1:
                raise ValueError("n_lambda and n_starts must be positive")
        except ValueError as exc:
            raise _bad_request(str(exc)) from exc
        sweep = lambda_sweep(
            kind, constellation, region, n_lambda=body.n_lambda, n_starts=body.n_starts
        )
        return {
            "constellation_id": body.constellation_id,
            "algorithm": kind.value,
            "lambdas": list(sweep.lambdas),
            "rates": list(sweep.rates),
            "starts_per_lambda": sweep.starts_per_lambda,
            "region": {
                "xmin": sweep.region.xmin,
                "xmax": sweep.region.xmax,
                "ymin": sweep.region.ymin,
                "ymax": sweep.region.ymax,
            },
            "best_lambda": pick_best_lambda(sweep),
        }

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
