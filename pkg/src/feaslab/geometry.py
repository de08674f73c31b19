"""Plane primitives: points, finite point sets, constellations, and the feasibility gauge.

A constellation is a finite family of finite planar point sets, viewed as one
feasibility problem: find a point common to all sets.  The gauge measures how
far a point is from that intersection, normalized to 1 at a chosen start.
"""

from __future__ import annotations

import hashlib
import math
import struct
from dataclasses import dataclass

import numpy as np

from . import _kernel

__all__ = [
    "Point",
    "FinitePointSet",
    "Region",
    "Constellation",
    "FeasibilityGauge",
    "StartInSolutionSet",
    "LOCAL_REGION",
    "GLOBAL_REGION",
    "project",
    "reflect",
    "make_gauge",
    "gauge_eval",
]


class StartInSolutionSet(ValueError):
    """The gauge start already lies in the intersection, so no gauge exists.

    Callers should treat the orbit as solved at iteration zero instead.
    """


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"point coordinates must be finite, got ({self.x!r}, {self.y!r})")

    def __iter__(self):
        yield self.x
        yield self.y


def _as_point(p) -> Point:
    if isinstance(p, Point):
        return p
    x, y = p
    return Point(float(x), float(y))


class FinitePointSet:
    """Ordered, duplicate-free collection of plane points.

    The order is significant: projection ties are broken toward the lowest
    index.  Duplicates (exact coordinate equality) are dropped on
    construction, keeping the first occurrence, so the tie rule stays
    well-defined.
    """

    __slots__ = ("points", "_xy", "_keys")

    def __init__(self, points):
        kept = []
        seen = set()
        for p in points:
            p = _as_point(p)
            key = (p.x, p.y)
            if key not in seen:
                seen.add(key)
                kept.append(p)
        if not kept:
            raise ValueError("a point set must contain at least one point")
        self.points = tuple(kept)
        self._xy = np.array([(p.x, p.y) for p in kept], dtype=np.float64)
        self._keys = frozenset(seen)

    @property
    def xy(self) -> np.ndarray:
        """(n, 2) float64 view of the members, in list order."""
        return self._xy

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p) -> bool:
        p = _as_point(p)
        return (p.x, p.y) in self._keys

    def __eq__(self, other):
        return isinstance(other, FinitePointSet) and self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        return f"FinitePointSet({len(self.points)} points)"


@dataclass(frozen=True)
class Region:
    """Axis-aligned rectangle in the plane."""

    xmin: float
    xmax: float
    ymin: float
    ymax: float

    def __post_init__(self):
        for v in (self.xmin, self.xmax, self.ymin, self.ymax):
            if not math.isfinite(v):
                raise ValueError("region bounds must be finite")
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            raise ValueError(f"degenerate region: [{self.xmin}, {self.xmax}] x [{self.ymin}, {self.ymax}]")

    @property
    def width(self) -> float:
        return self.xmax - self.xmin

    @property
    def height(self) -> float:
        return self.ymax - self.ymin

    def contains(self, p: Point) -> bool:
        return self.xmin <= p.x <= self.xmax and self.ymin <= p.y <= self.ymax


#: Sampling windows used throughout: a near view around the sets and a far one.
LOCAL_REGION = Region(-10.0, 10.0, -10.0, 10.0)
GLOBAL_REGION = Region(-100.0, 100.0, -100.0, 100.0)


def bounding_region(sets, pad: float = 1.0) -> Region:
    """Tight bounding box of all points, padded where it would degenerate."""
    xs = [p.x for s in sets for p in s]
    ys = [p.y for s in sets for p in s]
    xmin, xmax, ymin, ymax = min(xs), max(xs), min(ys), max(ys)
    if xmin == xmax:
        xmin, xmax = xmin - pad, xmax + pad
    if ymin == ymax:
        ymin, ymax = ymin - pad, ymax + pad
    return Region(xmin, xmax, ymin, ymax)


class Constellation:
    """An ordered family of finite point sets defining one feasibility problem.

    ``feasible_hint``, when present, is a point known to lie in every set
    (exact coordinate equality); generators set it when they can guarantee
    one.  ``provenance`` is free-form creation metadata (seed, preset, ...)
    carried into persisted artifacts.
    """

    __slots__ = ("sets", "region", "feasible_hint", "provenance", "_stack")

    def __init__(self, sets, region: Region, feasible_hint: Point | None = None, provenance: dict | None = None):
        sets = tuple(sets)
        if not sets:
            raise ValueError("a constellation needs at least one set")
        if feasible_hint is not None:
            feasible_hint = _as_point(feasible_hint)
            for i, s in enumerate(sets):
                if feasible_hint not in s:
                    raise ValueError(f"feasible_hint {feasible_hint} is not a member of set {i}")
        self.sets = sets
        self.region = region
        self.feasible_hint = feasible_hint
        self.provenance = dict(provenance) if provenance else {}
        self._stack = None

    @property
    def m(self) -> int:
        return len(self.sets)

    def set_arrays(self) -> list[np.ndarray]:
        return [s.xy for s in self.sets]

    def stack(self) -> np.ndarray:
        """Padded (m, pmax, 2) array of all sets, built once and cached."""
        if self._stack is None:
            self._stack = _kernel.stack_sets(self.set_arrays())
        return self._stack

    def is_common_point(self, p: Point) -> bool:
        """Exact membership of ``p`` in every set."""
        return all(p in s for s in self.sets)

    def content_id(self) -> str:
        """Short content hash of the geometry; stable across runs and platforms."""
        h = hashlib.sha256()
        for s in self.sets:
            h.update(struct.pack("<q", len(s)))
            for p in s:
                h.update(struct.pack("<dd", p.x, p.y))
        return h.hexdigest()[:12]

    def __eq__(self, other):
        return (
            isinstance(other, Constellation)
            and self.sets == other.sets
            and self.region == other.region
            and self.feasible_hint == other.feasible_hint
        )

    def __repr__(self):
        sizes = ",".join(str(len(s)) for s in self.sets)
        return f"Constellation(m={self.m}, sizes=[{sizes}])"


def project(pset: FinitePointSet, q: Point) -> Point:
    """Nearest member of ``pset`` to ``q``; ties go to the lowest list index."""
    idx = _kernel.nearest_index(pset.xy, np.array([(q.x, q.y)]))[0]
    return pset.points[idx]


def reflect(pset: FinitePointSet, q: Point) -> Point:
    """Reflection of ``q`` through its projection: 2 * project(q) - q."""
    p = project(pset, q)
    return Point(2.0 * p.x - q.x, 2.0 * p.y - q.y)


@dataclass(frozen=True)
class FeasibilityGauge:
    """Distance-to-intersection measure normalized to 1 at its start point.

    ``denominator`` is the summed squared set distance at the start; it is
    strictly positive by construction.
    """

    constellation: Constellation
    denominator: float


def _sq_dist_sum(constellation: Constellation, p: Point) -> float:
    q = np.array([(p.x, p.y)])
    return float(_kernel.sq_dist_sum(constellation.stack(), q)[0])


def make_gauge(constellation: Constellation, x0: Point) -> FeasibilityGauge:
    """Gauge anchored at ``x0``.

    Raises :class:`StartInSolutionSet` when ``x0`` already lies in every set
    (the normalization would divide by zero); callers must then report the
    orbit as solved at iteration zero rather than evaluate anything.
    """
    den = _sq_dist_sum(constellation, x0)
    if den == 0.0:
        raise StartInSolutionSet(f"start {x0} lies in the intersection")
    return FeasibilityGauge(constellation, den)


def gauge_eval(gauge: FeasibilityGauge, y: Point) -> float:
    """Normalized feasibility measure at ``y``: zero exactly on common points."""
    num = _sq_dist_sum(gauge.constellation, y)
    return math.sqrt(num / gauge.denominator)
