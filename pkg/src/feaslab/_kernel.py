"""Vectorized inner loops shared by the scalar API and the batch experiment drivers.

Every operation here is an elementwise IEEE binary64 computation in a fixed
order, so a batch of size one reproduces the scalar results bit for bit and
batch results do not depend on how the batch is partitioned.  The relaxation
parameter may be one shared scalar or one value per row; a row sees the same
arithmetic either way, which is what lets a parameter sweep fuse its whole
(lambda, start) grid into a single batch.
"""

from __future__ import annotations

import numpy as np
from scipy.spatial.distance import cdist

# Extrapolated steps divide by ||sum of residuals||^2, which can vanish at
# non-solutions (balanced pull).  Below this floor the point is held fixed.
DENOM_FLOOR = 1e-24


def _sq_dists(q: np.ndarray, set_xy: np.ndarray) -> np.ndarray:
    """(n, p) squared distances, computed as (dx*dx + dy*dy) per pair.

    ``cdist`` runs the identical subtract-square arithmetic in one C pass, so
    it reproduces the naive numpy expression bit for bit while touching far
    less memory.
    """
    return cdist(q, set_xy, "sqeuclidean")


def nearest_index(set_xy: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Index of the nearest member of one point set for each query row.

    Ties go to the lowest index (``argmin`` keeps the first minimum).
    ``set_xy`` is (p, 2), ``q`` is (n, 2); returns (n,) ints.
    """
    return np.argmin(_sq_dists(q, set_xy), axis=1)


def nearest_points(set_xy: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Nearest member of one point set for each query row, (n, 2)."""
    return set_xy[nearest_index(set_xy, q)]


def stack_sets(set_arrays: list[np.ndarray]) -> np.ndarray:
    """Pad per-set (p_i, 2) arrays into one (m, pmax, 2) stack.

    Padding entries are +inf so they can never win an argmin; every real set
    is nonempty so a finite winner always exists.
    """
    m = len(set_arrays)
    pmax = max(a.shape[0] for a in set_arrays)
    stack = np.full((m, pmax, 2), np.inf)
    for i, a in enumerate(set_arrays):
        stack[i, : a.shape[0]] = a
    return stack


def nearest_per_set(stack: np.ndarray, q: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Nearest member of every set for each query row.

    Returns (proj, min_d2): proj is (n, m, 2), min_d2 is (n, m) with the
    squared distance achieved by each projection.
    """
    n, m = q.shape[0], stack.shape[0]
    proj = np.empty((n, m, 2))
    min_d2 = np.empty((n, m))
    rows = np.arange(n)
    for i in range(m):
        d2 = _sq_dists(q, stack[i])
        idx = np.argmin(d2, axis=1)
        proj[:, i] = stack[i][idx]
        min_d2[:, i] = d2[rows, idx]
    return proj, min_d2


def sq_dist_sum(stack: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Sum over sets of the squared distance to the nearest member, (n,)."""
    total = np.min(_sq_dists(q, stack[0]), axis=1)
    for i in range(1, stack.shape[0]):
        total += np.min(_sq_dists(q, stack[i]), axis=1)
    return total


# -- per-algorithm governing updates ----------------------------------------
#
# State layout: single-point kinds carry X of shape (n, 2); the product-space
# kind carries (block, mean) with block (n, m, 2) and mean (n, 2).


def _rowwise(c: float | np.ndarray):
    """Column view of per-row coefficients; scalars pass through untouched."""
    return c[:, None] if isinstance(c, np.ndarray) else c


def step_cycp(set_arrays: list[np.ndarray], lam: float | np.ndarray, x: np.ndarray) -> np.ndarray:
    """One full relaxed-projection cycle over the sets, in order."""
    one_minus = _rowwise(1.0 - lam)
    lam = _rowwise(lam)
    for a in set_arrays:
        x = one_minus * x + lam * nearest_points(a, x)
    return x


def step_exparp(stack: np.ndarray, lam: float | np.ndarray, x: np.ndarray) -> np.ndarray:
    """One extrapolated simultaneous-projection step.

    Points already in the intersection, or points whose summed residual has
    (numerically) vanished, are returned unchanged.
    """
    proj, min_d2 = nearest_per_set(stack, x)
    num = np.sum(min_d2, axis=1)
    v = np.sum(proj - x[:, None, :], axis=1)
    den = v[:, 0] * v[:, 0] + v[:, 1] * v[:, 1]
    move = (num > 0.0) & (den > DENOM_FLOOR)
    factor = np.zeros_like(num)
    np.divide(num, den, out=factor, where=move)
    stepped = x + (lam * factor)[:, None] * v
    return np.where(move[:, None], stepped, x)


def step_dr(set_arrays: list[np.ndarray], lam: float | np.ndarray, block: np.ndarray, mean: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """One product-space averaged-reflection update; returns (block, mean).

    Component i reflects through the current mean and projects onto set i;
    all components step against the same (old) mean.
    """
    m = block.shape[1]
    lam = _rowwise(lam)
    new_block = np.empty_like(block)
    for i, a in enumerate(set_arrays):
        arg = 2.0 * mean - block[:, i]
        proj = nearest_points(a, arg)
        new_block[:, i] = block[:, i] + lam * (proj - mean)
    new_mean = np.sum(new_block, axis=1) / m
    return new_block, new_mean


def step_cycdr(set_arrays: list[np.ndarray], lam: float | np.ndarray, x: np.ndarray) -> np.ndarray:
    """One full cycle of pairwise reflect-reflect-average blocks.

    Block i pairs set i with set i+1; the last block wraps around to set 0.
    """
    m = len(set_arrays)
    a = _rowwise(1.0 - 0.5 * lam)
    b = _rowwise(0.25 * lam)
    for i in range(m):
        j = (i + 1) % m
        p_i = nearest_points(set_arrays[i], x)
        r_i = 2.0 * p_i - x
        p_j = nearest_points(set_arrays[j], r_i)
        rr = 2.0 * p_j - r_i
        x = a * p_i + b * (x + rr)
    return x


def projection_average(stack: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Mean of the per-set projections of each query row, (n, 2)."""
    proj, _ = nearest_per_set(stack, x)
    return np.sum(proj, axis=1) / stack.shape[0]
