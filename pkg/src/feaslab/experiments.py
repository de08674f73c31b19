"""Experiment protocols: success-rate sweeps, iteration-count maps, batch orbits.

All drivers are deterministic and independent of the worker count: work is
partitioned into fixed index or pixel ranges, each task is pure, and results
land in disjoint output slots.  Threads only overlap the numpy-heavy parts.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .algorithms import (
    DEFAULT_EPSILON,
    DEFAULT_MAX_ITERATIONS,
    AlgorithmConfig,
    AlgorithmKind,
    _run_rows,
    run_batch,
)
from .geometry import Constellation, Point, Region
from .sampling import sample_region_xy

__all__ = [
    "SuccessSummary",
    "SweepResult",
    "IterationMap",
    "success_rate",
    "lambda_grid",
    "lambda_sweep",
    "pick_best_lambda",
    "cartographer",
    "progressive_cartographer",
    "resolve_workers",
]

#: Fixed height of the pixel bands a map is partitioned into; independent of
#: the worker count so the partition never influences the output.
_TILE_ROWS = 16

#: Budget for one sweep task, counted in entries of the (rows, sets, members)
#: distance block it materializes per iteration.  Only a speed/memory knob:
#: rows never interact, so the grouping cannot change any result.
_SWEEP_BLOCK_ELEMENTS = 2_000_000

#: Scale-up flag: poster-quality far-field maps want at least this many
#: starting points per image.  Never a default; desk-scale runs use 512x512.
FULL_SCALE_MAP_SAMPLES = 15_000_000


def resolve_workers(workers: int | None = None) -> int:
    """Explicit count, else FEASLAB_THREADS, else the machine's CPU count."""
    if workers is not None:
        if workers < 1:
            raise ValueError("need at least one worker")
        return workers
    env = os.environ.get("FEASLAB_THREADS")
    if env:
        n = int(env)
        if n < 1:
            raise ValueError("FEASLAB_THREADS must be positive")
        return n
    return os.cpu_count() or 1


@dataclass(frozen=True)
class SuccessSummary:
    successes: int
    total: int

    def __post_init__(self):
        if not 0 <= self.successes <= self.total:
            raise ValueError("successes must lie in [0, total]")

    @property
    def rate(self) -> float:
        return self.successes / self.total


@dataclass(frozen=True)
class SweepResult:
    """Per-lambda success rates for one algorithm on one constellation."""

    kind: AlgorithmKind
    lambdas: tuple[float, ...]
    rates: tuple[float, ...]
    starts_per_lambda: int
    region: Region
    constellation_id: str

    def __post_init__(self):
        if len(self.lambdas) != len(self.rates):
            raise ValueError("one rate per lambda")
        if any(not 0.0 <= r <= 1.0 for r in self.rates):
            raise ValueError("rates are fractions in [0, 1]")


@dataclass(frozen=True)
class IterationMap:
    """Rasterized per-start iteration counts over a region.

    ``counts`` is a (height, width) int array, row 0 at the top of the
    region; solved cells hold the solve index, unsuccessful ones the cap.
    """

    region: Region
    width: int
    height: int
    counts: np.ndarray
    metadata: dict

    def __post_init__(self):
        if self.counts.shape != (self.height, self.width):
            raise ValueError("counts grid must be height x width")

    @property
    def max_iterations(self) -> int:
        return int(self.metadata["max_iterations"])

    def success_summary(self) -> SuccessSummary:
        """Rate implied by the grid: a cell below the cap counts as solved."""
        return SuccessSummary(
            successes=int(np.count_nonzero(self.counts < self.max_iterations)),
            total=self.counts.size,
        )


def _starts_to_xy(starts) -> np.ndarray:
    if isinstance(starts, np.ndarray):
        return np.asarray(starts, dtype=np.float64)
    return np.array([(p.x, p.y) for p in starts], dtype=np.float64)


def success_rate(config: AlgorithmConfig, constellation: Constellation, starts) -> SuccessSummary:
    """Fraction of the given starts whose orbit meets the stopping rule."""
    xy = _starts_to_xy(starts)
    if xy.shape[0] == 0:
        raise ValueError("need at least one start")
    solved, _ = run_batch(config, constellation, xy)
    return SuccessSummary(successes=int(np.count_nonzero(solved)), total=xy.shape[0])


def lambda_grid(n_lambda: int) -> tuple[float, ...]:
    """``n_lambda`` evenly spaced midpoints strictly inside (0, 2)."""
    if n_lambda < 1:
        raise ValueError("need at least one lambda")
    step = 2.0 / n_lambda
    return tuple((j + 0.5) * step for j in range(n_lambda))


def lambda_sweep(
    kind: AlgorithmKind,
    constellation: Constellation,
    region: Region,
    n_lambda: int = 200,
    n_starts: int = 5000,
    *,
    epsilon: float = DEFAULT_EPSILON,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
    workers: int | None = None,
) -> SweepResult:
    """Success rate per lambda over the midpoint grid.

    Every lambda is scored against the same starts: entries 1 .. n_starts of
    the global low-discrepancy stream mapped into ``region``.  Consecutive
    lambdas are grouped into fixed-size blocks and each block runs its whole
    (lambda, start) grid as one fused batch; rows never interact, so the
    grouping affects speed only.
    """
    knobs = AlgorithmConfig(kind=kind, lam=1.0, epsilon=epsilon, max_iterations=max_iterations)
    lambdas = lambda_grid(n_lambda)
    lam_arr = np.asarray(lambdas)
    starts = sample_region_xy(region, n_starts, start_index=1)

    cells = constellation.m * constellation.stack().shape[1] * n_starts
    block = max(1, min(n_lambda, _SWEEP_BLOCK_ELEMENTS // max(cells, 1)))
    spans = [(i, min(i + block, n_lambda)) for i in range(0, n_lambda, block)]

    def successes_for(span: tuple[int, int]) -> list[int]:
        i0, i1 = span
        lam_rows = np.repeat(lam_arr[i0:i1], n_starts)
        xy = np.tile(starts, (i1 - i0, 1))
        solved, _ = _run_rows(kind, lam_rows, knobs.epsilon, knobs.max_iterations, constellation, xy)
        per_lambda = solved.reshape(i1 - i0, n_starts)
        return [int(np.count_nonzero(row)) for row in per_lambda]

    n_workers = min(resolve_workers(workers), len(spans))
    if n_workers == 1:
        blocks = list(map(successes_for, spans))
    else:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            blocks = list(pool.map(successes_for, spans))
    rates = tuple(s / n_starts for blk in blocks for s in blk)
    return SweepResult(
        kind=kind,
        lambdas=lambdas,
        rates=rates,
        starts_per_lambda=n_starts,
        region=region,
        constellation_id=constellation.content_id(),
    )


def pick_best_lambda(sweep: SweepResult) -> float:
    """Lambda with the highest rate; ties prefer proximity to 1, then smaller."""
    if not sweep.lambdas:
        raise ValueError("empty sweep")
    best = max(sweep.rates)
    candidates = [lam for lam, r in zip(sweep.lambdas, sweep.rates) if r == best]
    return min(candidates, key=lambda lam: (abs(lam - 1.0), lam))


def _pixel_centers(region: Region, width: int, height: int, rows: range) -> np.ndarray:
    """Centers of the pixels in the given rows, row 0 at the top (ymax)."""
    cols = np.arange(width, dtype=np.float64)
    xs = region.xmin + (cols + 0.5) * (region.width / width)
    out = np.empty((len(rows) * width, 2))
    for i, row in enumerate(rows):
        y = region.ymax - (row + 0.5) * (region.height / height)
        out[i * width : (i + 1) * width, 0] = xs
        out[i * width : (i + 1) * width, 1] = y
    return out


def cartographer(
    config: AlgorithmConfig,
    constellation: Constellation,
    region: Region,
    width: int,
    height: int,
    *,
    workers: int | None = None,
) -> IterationMap:
    """Iteration counts at every pixel center of a width x height raster.

    The raster is cut into fixed 16-row bands processed independently, so the
    image is identical for any worker count.
    """
    if width < 1 or height < 1:
        raise ValueError("the raster needs at least one pixel")
    bands = [range(r0, min(r0 + _TILE_ROWS, height)) for r0 in range(0, height, _TILE_ROWS)]

    def solve_band(rows: range) -> np.ndarray:
        starts = _pixel_centers(region, width, height, rows)
        _, band_counts = run_batch(config, constellation, starts)
        return band_counts.reshape(len(rows), width)

    counts = np.empty((height, width), dtype=np.int64)
    n_workers = min(resolve_workers(workers), len(bands))
    if n_workers == 1:
        results = map(solve_band, bands)
    else:
        pool = ThreadPoolExecutor(max_workers=n_workers)
        results = pool.map(solve_band, bands)
    for rows, band in zip(bands, results):
        counts[rows.start : rows.stop] = band
    if n_workers > 1:
        pool.shutdown()

    return IterationMap(
        region=region,
        width=width,
        height=height,
        counts=counts,
        metadata={
            "algorithm": config.kind.value,
            "lambda": config.lam,
            "epsilon": config.epsilon,
            "max_iterations": config.max_iterations,
            "constellation_id": constellation.content_id(),
            **({"seed": constellation.provenance["seed"]} if "seed" in constellation.provenance else {}),
        },
    )


def progressive_cartographer(
    config: AlgorithmConfig,
    constellation: Constellation,
    region: Region,
    sample_budget: int,
    chunk: int,
) -> Iterator[list[tuple[Point, int]]]:
    """Stream (start, iteration count) batches over the global QMC stream.

    Batches cover stream indices 1 .. sample_budget in order; the union of
    all batches is exactly the first ``sample_budget`` stream entries, so a
    progressive render and a one-shot run see the same points.
    """
    if chunk < 1 or sample_budget < chunk:
        raise ValueError("need budget >= chunk >= 1")
    index = 1
    remaining = sample_budget
    while remaining > 0:
        size = min(chunk, remaining)
        xy = sample_region_xy(region, size, start_index=index)
        _, counts = run_batch(config, constellation, xy)
        yield [
            (Point(float(x), float(y)), int(c))
            for (x, y), c in zip(xy, counts)
        ]
        index += size
        remaining -= size
