"""Tensor Haar functions and exact Haar coefficients of the discrepancy function.

The basis is L-infinity normalized: on its dyadic interval a Haar function is
+1 on the left half, -1 on the right half, 0 outside; level -1 denotes the
indicator of [0,1). Halves follow the half-open convention [left, mid) and
[mid, right), so the midpoint evaluates to -1.

Coefficients of the discrepancy function split into a point part (one
closed-form tail integral per point and axis) and a volume part (independent
of the box position). Boxes whose open interior contains no point have point
part exactly zero, which is what makes the level-by-level partial sums of the
squared-norm identity computable without enumerating every box.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import Iterator, Sequence, TextIO, Union

import numpy as np

from .core import (
    DEFAULT_ENUMERATION_BUDGET,
    BudgetExceededError,
    DyadicIndex,
    PointSet,
)

__all__ = [
    "HaarCoefficient",
    "haar_eval_1d",
    "haar_eval",
    "tail_integral_1d",
    "volume_coeff_1d",
    "volume_coeff",
    "point_coeff",
    "discrepancy_haar_coeff",
    "parseval_partial_sum",
    "parseval_profile",
    "haar_spectrum",
    "write_spectrum_csv",
]


@dataclass(frozen=True)
class HaarCoefficient:
    """One coefficient of the discrepancy function, value = point_part - volume_part."""

    index: DyadicIndex
    value: float
    point_part: float
    volume_part: float


def _check_1d_index(level: int, position: int) -> None:
    if level < -1:
        raise ValueError(f"level {level} below -1")
    if level == -1:
        if position != 0:
            raise ValueError(f"position must be 0 at level -1, got {position}")
    elif not 0 <= position < (1 << level):
        raise ValueError(f"position {position} outside [0, 2^{level})")


def haar_eval_1d(level: int, position: int, t: float) -> float:
    """Evaluate the 1-D Haar function at t in [0,1); level -1 is the indicator."""
    _check_1d_index(level, position)
    if not 0.0 <= t < 1.0:
        raise ValueError(f"t={t!r} outside [0,1)")
    if level == -1:
        return 1.0
    width = 2.0 ** (-level)
    left = position * width
    if t < left or t >= left + width:
        return 0.0
    return 1.0 if t < left + width / 2.0 else -1.0


def haar_eval(index: DyadicIndex, x: Sequence[float]) -> float:
    """Tensor-product Haar value at a point of the cube."""
    if len(x) != index.dim:
        raise ValueError(f"point has dim {len(x)}, index has dim {index.dim}")
    out = 1.0
    for j, m, t in zip(index.levels, index.positions, x):
        out *= haar_eval_1d(j, m, t)
        if out == 0.0:
            return 0.0
    return out


def tail_integral_1d(level: int, position: int, z: float) -> float:
    """Closed form of the integral of the 1-D Haar function over [z, 1).

    Zero whenever z lies outside the open support (the left endpoint counts
    as outside: the two halves then cancel exactly). For level -1 the value
    is 1 - z.
    """
    _check_1d_index(level, position)
    if not 0.0 <= z < 1.0:
        raise ValueError(f"z={z!r} outside [0,1)")
    if level == -1:
        return 1.0 - z
    width = 2.0 ** (-level)
    half = width / 2.0
    left = position * width
    mid = left + half
    if z <= left or z >= left + width:
        return 0.0
    if z < mid:
        return (mid - z) - half
    return -(left + width - z)


def volume_coeff_1d(level: int) -> float:
    """1-D factor of the volume part: integral of t * haar(t) over [0,1).

    Exactly -2^(-2*level-2) for level >= 0 (independent of position) and 1/2
    for level -1.
    """
    if level < -1:
        raise ValueError(f"level {level} below -1")
    if level == -1:
        return 0.5
    return -(2.0 ** (-2 * level - 2))


def volume_coeff(index: DyadicIndex) -> float:
    """Tensor volume coefficient: product of the 1-D factors.

    Magnitude 2^(-2*sum(levels >= 0) - 2*#nonneg) * 2^(-#neg); the sign is
    (-1)^(#nonneg axes), so it is positive in even dimension with all axes
    active. Callers needing only the magnitude should take abs().
    """
    out = 1.0
    for j in index.levels:
        out *= volume_coeff_1d(j)
    return out


def point_coeff(index: DyadicIndex, z: Sequence[float]) -> float:
    """Coefficient of one point's counting box: product of tail integrals.

    Vanishes whenever some axis with level >= 0 has its coordinate outside
    the open 1-D support.
    """
    if len(z) != index.dim:
        raise ValueError(f"point has dim {len(z)}, index has dim {index.dim}")
    out = 1.0
    for j, m, zi in zip(index.levels, index.positions, z):
        out *= tail_integral_1d(j, m, zi)
        if out == 0.0:
            return 0.0
    return out


def _tail_factors(level: int, position_arr: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Vectorized tail_integral_1d for points known to lie strictly inside
    their own boxes (position_arr holds each point's box position)."""
    width = 2.0 ** (-level)
    half = width / 2.0
    left = position_arr * width
    mid = left + half
    return np.where(z < mid, (mid - z) - half, -(left + width - z))


def discrepancy_haar_coeff(ps: PointSet, index: DyadicIndex) -> HaarCoefficient:
    """Exact Haar coefficient of the discrepancy function of ps.

    point_part sums each point's weighted tail-integral product (pairwise
    summation); volume_part is N times the volume coefficient. For an index
    with all levels >= 0 whose open box contains no point, the value is
    exactly -N * volume_coeff(index).
    """
    if index.dim != ps.dim:
        raise ValueError(f"index dim {index.dim} != point set dim {ps.dim}")
    factors = ps.effective_weights().copy()
    for axis, (j, m) in enumerate(zip(index.levels, index.positions)):
        z = ps.points[:, axis]
        if j == -1:
            factors *= 1.0 - z
            continue
        width = 2.0 ** (-j)
        half = width / 2.0
        left = m * width
        mid = left + half
        tail = np.where(
            (z <= left) | (z >= left + width),
            0.0,
            np.where(z < mid, (mid - z) - half, -(left + width - z)),
        )
        factors *= tail
    point_part = float(np.sum(factors))
    volume_part = ps.n * volume_coeff(index)
    return HaarCoefficient(
        index=index,
        value=point_part - volume_part,
        point_part=point_part,
        volume_part=volume_part,
    )


def _level_boxes(ps: PointSet, j_vec: tuple[int, ...]):
    """Occupied-box data for one level vector.

    Returns (total_boxes, volume_part, codes, sums) where codes are the
    raveled box positions (over axes with level >= 0) of occupied boxes and
    sums their point parts. Points on a dyadic grid hyperplane of the level
    lie in no open box and contribute nothing, matching the closed form.
    """
    pos_axes = [i for i, j in enumerate(j_vec) if j >= 0]
    n = ps.n
    contrib = ps.effective_weights().copy()
    for i, j in enumerate(j_vec):
        if j == -1:
            contrib = contrib * (1.0 - ps.points[:, i])
    valid = np.ones(n, dtype=bool)
    boxes = []
    for i in pos_axes:
        scaled = ps.points[:, i] * float(1 << j_vec[i])  # exact: power-of-two scale
        b = np.floor(scaled)
        valid &= scaled != b
        boxes.append(b.astype(np.int64))
    total = 1
    for i in pos_axes:
        total <<= j_vec[i]
    vc = 1.0
    for j in j_vec:
        vc *= volume_coeff_1d(j)
    volume_part = n * vc
    if pos_axes:
        for k, i in enumerate(pos_axes):
            contrib = contrib * _tail_factors(j_vec[i], boxes[k].astype(np.float64), ps.points[:, i])
    if not valid.any():
        return total, volume_part, np.empty(0, dtype=np.int64), np.empty(0)
    contrib = contrib[valid]
    if not pos_axes:
        return total, volume_part, np.zeros(1, dtype=np.int64), np.array([np.sum(contrib)])
    code = np.zeros(valid.sum(), dtype=np.int64)
    for k, i in enumerate(pos_axes):
        code = (code << j_vec[i]) | boxes[k][valid]
    order = np.argsort(code, kind="stable")
    code = code[order]
    contrib = contrib[order]
    starts = np.flatnonzero(np.r_[True, code[1:] != code[:-1]])
    ends = np.r_[starts[1:], code.size]
    sums = np.array([np.sum(contrib[a:b]) for a, b in zip(starts, ends)])
    return total, volume_part, code[starts], sums


def _level_energy(ps: PointSet, j_vec: tuple[int, ...]) -> float:
    """Parseval contribution 2^level_sum * sum_m mu^2 of one level vector."""
    total, volume_part, _, sums = _level_boxes(ps, j_vec)
    empty = total - sums.size
    mu_sq = empty * volume_part * volume_part
    if sums.size:
        mu_sq += float(np.sum((sums - volume_part) ** 2))
    return total * mu_sq  # the Parseval weight 2^level_sum equals total


def _check_parseval_budget(ps: PointSet, j_max: int, budget: int, force: bool) -> None:
    work = (j_max + 2) ** ps.dim * ps.n
    if work > budget and not force:
        raise BudgetExceededError(
            f"level scan needs ~{work:.3g} point passes, over budget {budget:.3g}; "
            "pass force=True or raise the budget"
        )


def parseval_profile(
    ps: PointSet,
    j_max: int,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
    force: bool = False,
) -> np.ndarray:
    """Partial sums of the squared-norm identity for every cutoff up to j_max.

    Entry k is the partial sum over all indices with every level <= k-1, so
    the array runs J = -1 .. j_max and is nondecreasing.
    """
    if j_max < -1:
        raise ValueError("j_max must be >= -1")
    _check_parseval_budget(ps, j_max, budget, force)
    by_cutoff = np.zeros(j_max + 2)
    for j_vec in product(range(-1, j_max + 1), repeat=ps.dim):
        by_cutoff[max(j_vec) + 1] += _level_energy(ps, j_vec)
    return np.cumsum(by_cutoff)


def parseval_partial_sum(
    ps: PointSet,
    j_max: int,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
    force: bool = False,
) -> float:
    """Partial sum over all indices with every level in {-1, ..., j_max}.

    Nondecreasing in j_max and bounded above by the exact squared norm.
    Empty boxes are aggregated in closed form, so the cost is
    O((j_max+2)^d * N), not the number of boxes.
    """
    return float(parseval_profile(ps, j_max, budget=budget, force=force)[-1])


def haar_spectrum(
    ps: PointSet,
    j_max: int,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
    force: bool = False,
) -> Iterator[HaarCoefficient]:
    """Yield every coefficient with levels in {-1, ..., j_max}^d.

    This genuinely enumerates all (levels, positions) pairs, so the total
    count (2^(j_max+1))^d must stay within budget unless force is set.
    """
    if j_max < -1:
        raise ValueError("j_max must be >= -1")
    total_indices = (2 ** (j_max + 1)) ** ps.dim
    if total_indices > budget and not force:
        raise BudgetExceededError(
            f"spectrum has {total_indices:.3g} indices, over budget {budget:.3g}; "
            "pass force=True or raise the budget"
        )
    for j_vec in product(range(-1, j_max + 1), repeat=ps.dim):
        total, volume_part, codes, sums = _level_boxes(ps, j_vec)
        occupied = dict(zip(codes.tolist(), sums.tolist()))
        pos_axes = [i for i, j in enumerate(j_vec) if j >= 0]
        for code in range(total):
            point_part = occupied.get(code, 0.0)
            positions = [0] * ps.dim
            rem = code
            for i in reversed(pos_axes):
                positions[i] = rem & ((1 << j_vec[i]) - 1)
                rem >>= j_vec[i]
            index = DyadicIndex(levels=j_vec, positions=tuple(positions))
            yield HaarCoefficient(
                index=index,
                value=point_part - volume_part,
                point_part=point_part,
                volume_part=volume_part,
            )


def write_spectrum_csv(
    ps: PointSet,
    j_max: int,
    target: Union[str, Path, TextIO],
    budget: int = DEFAULT_ENUMERATION_BUDGET,
    force: bool = False,
) -> int:
    """Write the spectrum as CSV (j_1..j_d, m_1..m_d, value, point_part,
    volume_part); returns the number of rows."""
    if isinstance(target, (str, Path)):
        with open(target, "w", encoding="utf-8", newline="") as handle:
            return write_spectrum_csv(ps, j_max, handle, budget=budget, force=force)
    d = ps.dim
    writer = csv.writer(target, lineterminator="\n")
    writer.writerow(
        [f"j_{i+1}" for i in range(d)]
        + [f"m_{i+1}" for i in range(d)]
        + ["value", "point_part", "volume_part"]
    )
    rows = 0
    for coeff in haar_spectrum(ps, j_max, budget=budget, force=force):
        writer.writerow(
            list(coeff.index.levels)
            + list(coeff.index.positions)
            + [repr(coeff.value), repr(coeff.point_part), repr(coeff.volume_part)]
        )
        rows += 1
    return rows
