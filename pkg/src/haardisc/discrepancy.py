"""Pointwise discrepancy evaluation and its exact L2 norm.

The discrepancy function counts the weighted points strictly dominating each
corner x (open boxes, ties count as outside) minus N times the volume of
[0, x). Its squared L2 norm has the classical pairwise closed form, computed
here with row-grouped pairwise summation so results are bit-stable for any
chunk size. Two independent oracles (uniform Monte Carlo and exact per-cell
grid integration) validate the closed form.

In the weighted case N stays the cardinality in the volume and cross terms;
scaling weights is not equivalent to replicating points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import BudgetExceededError, PointSet
from .rng import uniform_block

__all__ = [
    "DiscrepancyValue",
    "discrepancy_at",
    "warnock_l2",
    "l2_monte_carlo",
    "l2_exact_grid",
]

_MC_CHUNK = 1 << 16
_GRID_CELL_BUDGET = 5 * 10**7


@dataclass(frozen=True)
class DiscrepancyValue:
    """Squared L2 norm and its square root for one point set."""

    l2_norm: float
    l2_norm_squared: float
    n_points: int
    weighted: bool


def discrepancy_at(ps: PointSet, x: Sequence[float]) -> float:
    """Discrepancy value at x in the closed cube [0,1]^d.

    A point z is counted iff z_i < x_i on every axis (strict: ties are
    outside the open box).
    """
    x_arr = np.asarray(x, dtype=np.float64)
    if x_arr.shape != (ps.dim,):
        raise ValueError(f"x must have dim {ps.dim}, got shape {x_arr.shape}")
    inside = np.all(ps.points < x_arr, axis=1)
    counted = float(np.sum(ps.effective_weights() * inside))
    return counted - ps.n * float(np.prod(x_arr))


def warnock_l2(ps: PointSet, row_chunk: int = 256) -> DiscrepancyValue:
    """Exact squared L2 norm by the O(N^2 d) pairwise expansion.

    l2^2 = sum_{z,z'} a_z a_z' prod_i (1 - max(z_i, z'_i))
           - 2 N sum_z a_z prod_i (1 - z_i^2)/2  +  N^2 3^(-d).

    Rows of the pair matrix are summed independently (pairwise within each
    row) and the row sums reduced once at the end, so the result does not
    depend on row_chunk.
    """
    n, d = ps.n, ps.dim
    pts = ps.points
    w = ps.effective_weights()
    row_sums = np.empty(n)
    for start in range(0, n, max(1, row_chunk)):
        stop = min(n, start + max(1, row_chunk))
        block = np.ones((stop - start, n))
        for i in range(d):
            block *= 1.0 - np.maximum(pts[start:stop, i][:, None], pts[None, :, i])
        block *= w[None, :]
        row_sums[start:stop] = np.sum(block, axis=1) * w[start:stop]
    pair_term = float(np.sum(row_sums))
    cross = np.prod((1.0 - pts * pts) / 2.0, axis=1)
    cross_term = float(np.sum(w * cross))
    l2_sq = pair_term - 2.0 * n * cross_term + n * n * 3.0 ** (-d)
    return DiscrepancyValue(
        l2_norm=math.sqrt(max(l2_sq, 0.0)),
        l2_norm_squared=l2_sq,
        n_points=n,
        weighted=ps.weighted,
    )


def _discrepancy_squared_block(ps: PointSet, samples: np.ndarray) -> np.ndarray:
    """Squared discrepancy at a (chunk, d) block of sample points."""
    w = ps.effective_weights()
    inside = np.all(samples[:, None, :] > ps.points[None, :, :], axis=2)
    counted = np.sum(inside * w[None, :], axis=1)
    vol = np.prod(samples, axis=1)
    vals = counted - ps.n * vol
    return vals * vals


def l2_monte_carlo(ps: PointSet, samples: int, seed: int = 0) -> tuple[float, float]:
    """Uniform Monte Carlo estimate of the squared L2 norm.

    Returns (estimate, standard error). Sampling uses the counter-based
    generator, so output is a pure function of (ps, samples, seed).
    """
    if samples < 2:
        raise ValueError("samples must be at least 2")
    d = ps.dim
    chunk_sums = []
    chunk_sq_sums = []
    for start in range(0, samples, _MC_CHUNK):
        count = min(_MC_CHUNK, samples - start)
        block = uniform_block(seed, start * d, count * d).reshape(count, d)
        sq = _discrepancy_squared_block(ps, block)
        chunk_sums.append(np.sum(sq))
        chunk_sq_sums.append(np.sum(sq * sq))
    total = float(np.sum(np.asarray(chunk_sums)))
    total_sq = float(np.sum(np.asarray(chunk_sq_sums)))
    mean = total / samples
    var = max(total_sq - samples * mean * mean, 0.0) / (samples - 1)
    return mean, math.sqrt(var / samples)


def l2_exact_grid(ps: PointSet) -> float:
    """Second oracle: exact squared norm by per-cell analytic integration.

    The counting part is constant on each open cell of the grid spanned by
    the point coordinates, so each cell integrates in closed form. Cost grows
    like (N+1)^d cells; intended for small N (hard cap 256).
    """
    n, d = ps.n, ps.dim
    if n > 256:
        raise BudgetExceededError(f"N={n} too large for the grid oracle (max 256)")
    grids = []
    for i in range(d):
        g = np.unique(np.concatenate(([0.0, 1.0], ps.points[:, i])))
        grids.append(g)
    cells = 1
    for g in grids:
        cells *= len(g) - 1
    if cells > _GRID_CELL_BUDGET:
        raise BudgetExceededError(f"grid oracle needs {cells} cells, over budget")
    shape = tuple(len(g) - 1 for g in grids)
    hist = np.zeros(shape)
    idx = tuple(
        np.searchsorted(grids[i], ps.points[:, i], side="left") for i in range(d)
    )
    np.add.at(hist, idx, ps.effective_weights())
    for axis in range(d):
        np.cumsum(hist, axis=axis, out=hist)
    widths = [np.diff(g) for g in grids]
    lin_moments = [(g[1:] ** 2 - g[:-1] ** 2) / 2.0 for g in grids]
    letters = "abcdefghijkl"[:d]
    spec_sq = ",".join([letters, letters] + list(letters)) + "->"
    spec_lin = ",".join([letters] + list(letters)) + "->"
    count_sq = float(np.einsum(spec_sq, hist, hist, *widths))
    count_lin = float(np.einsum(spec_lin, hist, *lin_moments))
    return count_sq - 2.0 * n * count_lin + n * n * 3.0 ** (-d)
