"""The four projection-type iteration schemes and orbit execution.

Each scheme has a governing sequence (the state the recursion drives) and a
monitored sequence (what the stopping rule inspects):

* ``cycp``   -- cyclic relaxed projections; monitors the mean of the per-set
  projections of the governing point.
* ``exparp`` -- extrapolated simultaneous projections; governing and monitored
  sequences coincide.
* ``dr``     -- product-space averaged reflections (Douglas-Rachford); the
  governing state is one point per set, the monitored point is their mean.
* ``cycdr``  -- cyclic pairwise Douglas-Rachford blocks; monitors the mean of
  the per-set projections, like ``cycp``.

An orbit stops at the first monitored point whose gauge value drops below
epsilon, or after ``max_iterations`` governing updates.  One iteration means
one governing update: a full cycle for the cyclic schemes, one product-space
update for ``dr``, one extrapolated step for ``exparp``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernel
from .geometry import Constellation, Point, StartInSolutionSet

__all__ = [
    "AlgorithmKind",
    "AlgorithmConfig",
    "SinglePointState",
    "ProductState",
    "OrbitState",
    "OrbitTrace",
    "DegenerateCycle",
    "LAMBDA_DEFAULT",
    "LAMBDA_BEST",
    "init_state",
    "step_cycp",
    "step_exparp",
    "step_dr",
    "step_cycdr",
    "step_state",
    "monitored_point",
    "governing_point",
    "run_orbit",
    "run_batch",
]

DEFAULT_EPSILON = 1e-6
DEFAULT_MAX_ITERATIONS = 1000


class DegenerateCycle(ValueError):
    """Cyclic pairwise blocks need at least two sets; the wraparound pairing
    is undefined for a single set."""


class AlgorithmKind(enum.Enum):
    CYCP = "cycp"
    EXPARP = "exparp"
    DR = "dr"
    CYCDR = "cycdr"

    @classmethod
    def parse(cls, name: str) -> "AlgorithmKind":
        try:
            return cls(name.strip().lower())
        except ValueError:
            valid = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown algorithm {name!r} (expected one of: {valid})") from None


#: Relaxation parameter used when nothing else is asked for.
LAMBDA_DEFAULT = 1.0

#: Per-algorithm tuned parameters, read off the success-rate curves.
LAMBDA_BEST = {
    AlgorithmKind.CYCP: 1.5,
    AlgorithmKind.EXPARP: 0.8,
    AlgorithmKind.DR: 1.6,
    AlgorithmKind.CYCDR: 1.2,
}


@dataclass(frozen=True)
class AlgorithmConfig:
    """Algorithm selection plus the knobs shared by all four schemes."""

    kind: AlgorithmKind
    lam: float = LAMBDA_DEFAULT
    epsilon: float = DEFAULT_EPSILON
    max_iterations: int = DEFAULT_MAX_ITERATIONS

    def __post_init__(self):
        if not (0.0 < self.lam < 2.0):
            raise ValueError(f"lambda must lie strictly inside (0, 2), got {self.lam}")
        if not self.epsilon > 0.0:
            raise ValueError("epsilon must be positive")
        if self.max_iterations < 1:
            raise ValueError("need at least one allowed iteration")


@dataclass(frozen=True)
class SinglePointState:
    """Governing state of the single-point schemes."""

    current: Point


@dataclass(frozen=True)
class ProductState:
    """Governing state of the product-space scheme: one point per set plus
    their arithmetic mean."""

    block: tuple[Point, ...]
    mean: Point


OrbitState = SinglePointState | ProductState


@dataclass(frozen=True)
class OrbitTrace:
    """Everything one orbit produced.

    The three sequences share one indexing: entry 0 describes the initial
    state, entry k the state after k governing updates.  ``solved_at`` is the
    first index whose error dropped below epsilon, or None when the iteration
    cap was exhausted.  When the start itself lies in the intersection no
    gauge exists; the trace then has a single entry with error 0.0.
    """

    config: AlgorithmConfig
    start: Point
    governing: tuple[OrbitState, ...]
    monitored: tuple[Point, ...]
    errors: tuple[float, ...]
    solved_at: int | None

    @property
    def solved(self) -> bool:
        return self.solved_at is not None

    @property
    def iterations(self) -> int:
        """Governing updates actually taken."""
        return len(self.governing) - 1

    def iteration_count(self) -> int:
        """Map cell value: solve index, or the cap when unsuccessful."""
        return self.solved_at if self.solved_at is not None else self.config.max_iterations


def _pt(xy: np.ndarray) -> Point:
    return Point(float(xy[0]), float(xy[1]))


def init_state(kind: AlgorithmKind, constellation: Constellation, x0: Point) -> OrbitState:
    """Initial governing state: the start itself, replicated per set for ``dr``."""
    if kind is AlgorithmKind.DR:
        return ProductState(block=(x0,) * constellation.m, mean=x0)
    return SinglePointState(current=x0)


def _require_single(state: OrbitState) -> np.ndarray:
    if not isinstance(state, SinglePointState):
        raise TypeError("this scheme drives a single governing point")
    p = state.current
    return np.array([(p.x, p.y)])


def step_cycp(constellation: Constellation, lam: float, state: OrbitState) -> OrbitState:
    """One relaxed-projection pass through all sets, in order."""
    x = _kernel.step_cycp(constellation.set_arrays(), lam, _require_single(state))
    return SinglePointState(_pt(x[0]))


def step_exparp(constellation: Constellation, lam: float, state: OrbitState) -> OrbitState:
    """One extrapolated simultaneous-projection step (fixed where it stalls)."""
    x = _kernel.step_exparp(constellation.stack(), lam, _require_single(state))
    return SinglePointState(_pt(x[0]))


def step_dr(constellation: Constellation, lam: float, state: OrbitState) -> OrbitState:
    """One product-space update; every component steps against the old mean."""
    if not isinstance(state, ProductState):
        raise TypeError("the product-space scheme drives a block state")
    if len(state.block) != constellation.m:
        raise ValueError(f"block has {len(state.block)} components for {constellation.m} sets")
    block = np.array([[(p.x, p.y) for p in state.block]])
    mean = np.array([(state.mean.x, state.mean.y)])
    new_block, new_mean = _kernel.step_dr(constellation.set_arrays(), lam, block, mean)
    return ProductState(
        block=tuple(_pt(row) for row in new_block[0]),
        mean=_pt(new_mean[0]),
    )


def step_cycdr(constellation: Constellation, lam: float, state: OrbitState) -> OrbitState:
    """One full cycle of pairwise reflection blocks (set i with set i+1, wrapping)."""
    if constellation.m < 2:
        raise DegenerateCycle("cyclic pairwise blocks need at least two sets")
    x = _kernel.step_cycdr(constellation.set_arrays(), lam, _require_single(state))
    return SinglePointState(_pt(x[0]))


_STEPPERS = {
    AlgorithmKind.CYCP: step_cycp,
    AlgorithmKind.EXPARP: step_exparp,
    AlgorithmKind.DR: step_dr,
    AlgorithmKind.CYCDR: step_cycdr,
}


def step_state(kind: AlgorithmKind, constellation: Constellation, lam: float, state: OrbitState) -> OrbitState:
    return _STEPPERS[kind](constellation, lam, state)


def monitored_point(kind: AlgorithmKind, constellation: Constellation, state: OrbitState) -> Point:
    """The point the stopping rule inspects for the given governing state."""
    if kind is AlgorithmKind.DR:
        if not isinstance(state, ProductState):
            raise TypeError("the product-space scheme drives a block state")
        return state.mean
    if kind is AlgorithmKind.EXPARP:
        if not isinstance(state, SinglePointState):
            raise TypeError("this scheme drives a single governing point")
        return state.current
    mon = _kernel.projection_average(constellation.stack(), _require_single(state))
    return _pt(mon[0])


def governing_point(state: OrbitState) -> Point:
    """Plane representative of the governing state (the mean for block states)."""
    return state.mean if isinstance(state, ProductState) else state.current


def run_orbit(config: AlgorithmConfig, constellation: Constellation, x0: Point) -> OrbitTrace:
    """Run one orbit to the stopping rule, recording every snapshot.

    The error is checked at index 0 (before any step) and after every
    governing update; the orbit is solved at the first index whose error
    falls below ``config.epsilon``.  A start already in the intersection
    yields a single-entry trace solved at index 0.
    """
    if config.kind is AlgorithmKind.CYCDR and constellation.m < 2:
        raise DegenerateCycle("cyclic pairwise blocks need at least two sets")

    state = init_state(config.kind, constellation, x0)
    den = _gauge_denominator(constellation, x0)
    if den == 0.0:
        return OrbitTrace(
            config=config,
            start=x0,
            governing=(state,),
            monitored=(monitored_point(config.kind, constellation, state),),
            errors=(0.0,),
            solved_at=0,
        )

    governing = [state]
    monitored = [monitored_point(config.kind, constellation, state)]
    errors = [_gauge_value(constellation, monitored[0], den)]
    solved_at = None
    if errors[0] < config.epsilon:
        solved_at = 0
    else:
        for k in range(1, config.max_iterations + 1):
            state = step_state(config.kind, constellation, config.lam, state)
            y = monitored_point(config.kind, constellation, state)
            d = _gauge_value(constellation, y, den)
            governing.append(state)
            monitored.append(y)
            errors.append(d)
            if d < config.epsilon:
                solved_at = k
                break

    return OrbitTrace(
        config=config,
        start=x0,
        governing=tuple(governing),
        monitored=tuple(monitored),
        errors=tuple(errors),
        solved_at=solved_at,
    )


def _gauge_denominator(constellation: Constellation, x0: Point) -> float:
    q = np.array([(x0.x, x0.y)])
    return float(_kernel.sq_dist_sum(constellation.stack(), q)[0])


def _gauge_value(constellation: Constellation, y: Point, denominator: float) -> float:
    q = np.array([(y.x, y.y)])
    num = float(_kernel.sq_dist_sum(constellation.stack(), q)[0])
    return math.sqrt(num / denominator)


def run_batch(config: AlgorithmConfig, constellation: Constellation, starts_xy: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Run one orbit per row of ``starts_xy`` (n, 2), tracking outcomes only.

    Returns ``(solved, counts)``: a bool array and an int array where solved
    entries hold the solve index and unsuccessful ones the iteration cap.
    Per-start results are bit-identical to :func:`run_orbit`; the vectorized
    path applies the same elementwise operations in the same order.
    """
    return _run_rows(config.kind, config.lam, config.epsilon, config.max_iterations, constellation, starts_xy)


def _run_rows(
    kind: AlgorithmKind,
    lam: float | np.ndarray,
    eps: float,
    cap: int,
    constellation: Constellation,
    starts_xy: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """Outcome-only batch driver behind :func:`run_batch`.

    ``lam`` is one shared scalar or one value per row; a row computes the same
    thing either way, which lets a parameter sweep fuse its whole
    (lambda, start) grid into a single batch.  Rows never interact, so results
    are independent of how rows are grouped into batches.
    """
    if kind is AlgorithmKind.CYCDR and constellation.m < 2:
        raise DegenerateCycle("cyclic pairwise blocks need at least two sets")

    starts_xy = np.asarray(starts_xy, dtype=np.float64)
    n = starts_xy.shape[0]
    per_row_lam = isinstance(lam, np.ndarray)
    if per_row_lam:
        lam = np.asarray(lam, dtype=np.float64)
        if lam.shape != (n,):
            raise ValueError("need exactly one lambda per start row")
    stack = constellation.stack()
    set_arrays = constellation.set_arrays()
    m = constellation.m

    solved = np.zeros(n, dtype=bool)
    counts = np.full(n, cap, dtype=np.int64)

    den = _kernel.sq_dist_sum(stack, starts_xy)
    in_solution = den == 0.0
    solved[in_solution] = True
    counts[in_solution] = 0

    alive = np.flatnonzero(~in_solution)
    if alive.size == 0:
        return solved, counts
    den = den[alive]
    if per_row_lam:
        lam = lam[alive]

    if kind is AlgorithmKind.DR:
        block = np.repeat(starts_xy[alive][:, None, :], m, axis=1)
        mean = starts_xy[alive].copy()
    else:
        x = starts_xy[alive].copy()

    def monitored_xy():
        if kind is AlgorithmKind.DR:
            return mean
        if kind is AlgorithmKind.EXPARP:
            return x
        return _kernel.projection_average(stack, x)

    for k in range(cap + 1):
        if k > 0:
            if kind is AlgorithmKind.CYCP:
                x = _kernel.step_cycp(set_arrays, lam, x)
            elif kind is AlgorithmKind.EXPARP:
                x = _kernel.step_exparp(stack, lam, x)
            elif kind is AlgorithmKind.CYCDR:
                x = _kernel.step_cycdr(set_arrays, lam, x)
            else:
                block, mean = _kernel.step_dr(set_arrays, lam, block, mean)
        num = _kernel.sq_dist_sum(stack, monitored_xy())
        hit = np.sqrt(num / den) < eps
        if np.any(hit):
            solved[alive[hit]] = True
            counts[alive[hit]] = k
            keep = ~hit
            alive = alive[keep]
            if alive.size == 0:
                break
            den = den[keep]
            if per_row_lam:
                lam = lam[keep]
            if kind is AlgorithmKind.DR:
                block = block[keep]
                mean = mean[keep]
            else:
                x = x[keep]
    return solved, counts
