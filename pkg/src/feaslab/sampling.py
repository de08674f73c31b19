"""Low-discrepancy starting points over rectangular regions.

One global two-dimensional Halton sequence (bases 2 and 3, one-based index)
supplies every quasi-random start in the project.  Consumers address it by
index windows, so partitioning work across threads cannot change the points.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .geometry import Point, Region

__all__ = ["HALTON_BASES", "QmcStream", "radical_inverse", "sample_region", "sample_region_xy"]

#: Fixed coprime bases of the global stream; frozen for the project's lifetime.
HALTON_BASES = (2, 3)


def _radical_inverse_array(indices: np.ndarray, base: int) -> np.ndarray:
    """Base-b radical inverse of each (positive) index.

    Digits are consumed least-significant first with weights 1/b, 1/b^2, ...;
    exhausted entries accumulate exact zeros, so values are independent of how
    indices are batched.
    """
    i = np.asarray(indices, dtype=np.int64).copy()
    if np.any(i < 1):
        raise ValueError("radical inverse indices are one-based")
    inv = 1.0 / base
    f = inv
    r = np.zeros(i.shape, dtype=np.float64)
    while np.any(i > 0):
        r += f * (i % base)
        i //= base
        f *= inv
    return r


def radical_inverse(index: int, base: int) -> float:
    """Standard base-b radical inverse of a one-based index, in (0, 1)."""
    if base < 2:
        raise ValueError("base must be at least 2")
    return float(_radical_inverse_array(np.array([index]), base)[0])


def sample_region_xy(region: Region, n: int, start_index: int = 1) -> np.ndarray:
    """Halton points ``start_index .. start_index + n - 1`` mapped into ``region``.

    Returns an (n, 2) float64 array; ``sample_region`` wraps the same values
    as :class:`Point` objects.
    """
    if n < 1:
        raise ValueError("need at least one sample")
    if start_index < 1:
        raise ValueError("the global stream is one-based")
    idx = np.arange(start_index, start_index + n, dtype=np.int64)
    u = _radical_inverse_array(idx, HALTON_BASES[0])
    v = _radical_inverse_array(idx, HALTON_BASES[1])
    out = np.empty((n, 2))
    out[:, 0] = region.xmin + u * (region.xmax - region.xmin)
    out[:, 1] = region.ymin + v * (region.ymax - region.ymin)
    return out


def sample_region(region: Region, n: int, start_index: int = 1) -> list[Point]:
    """Deterministic low-discrepancy starts inside the closed region."""
    xy = sample_region_xy(region, n, start_index)
    return [Point(float(x), float(y)) for x, y in xy]


@dataclass(frozen=True)
class QmcStream:
    """Cursor into the global Halton stream; pure value, advance by ``take``."""

    next_index: int = 1

    def __post_init__(self):
        if self.next_index < 1:
            raise ValueError("stream indices are one-based")

    def take_xy(self, region: Region, n: int) -> tuple[np.ndarray, "QmcStream"]:
        pts = sample_region_xy(region, n, self.next_index)
        return pts, replace(self, next_index=self.next_index + n)

    def take(self, region: Region, n: int) -> tuple[list[Point], "QmcStream"]:
        pts = sample_region(region, n, self.next_index)
        return pts, replace(self, next_index=self.next_index + n)
