"""Shared domain types: validated point sets, dyadic indices, exact constants.

Coordinates live in the half-open cube [0,1)^d and are stored as float64.
Constants that are rational are carried as ``fractions.Fraction`` so identities
between them can be tested exactly; everything derived from a logarithm is a
plain float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence, TextIO, Union

import numpy as np

__all__ = [
    "Rational",
    "PointSet",
    "DyadicIndex",
    "Constants",
    "PointSetError",
    "BudgetExceededError",
    "DEFAULT_ENUMERATION_BUDGET",
    "validate_point_set",
    "constants_table",
    "lower_bound_constant",
    "classical_lower_bound_constant",
    "load_point_set",
    "save_point_set",
    "format_float",
]

# Exact rational scalar type used for the optimization constants.
Rational = Fraction

# Ceiling on explicitly enumerated work items (Haar indices, grid cells,
# level-vector passes) before an operation refuses to run without force=True.
DEFAULT_ENUMERATION_BUDGET = 10**8


class PointSetError(ValueError):
    """Raised when raw input fails point-set validation."""


class BudgetExceededError(RuntimeError):
    """Raised when an enumeration would exceed its resource budget."""


@dataclass(frozen=True)
class PointSet:
    """An ordered multiset of N points in [0,1)^d with optional real weights.

    ``points`` is an (N, d) float64 array, ``weights`` an (N,) float64 array
    or None (meaning unit weights). Arrays are marked read-only; instances are
    safe to share across threads. Duplicate points are allowed and N counts
    them with multiplicity.
    """

    dim: int
    points: np.ndarray
    weights: np.ndarray | None = None

    def __post_init__(self) -> None:
        pts = np.ascontiguousarray(self.points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[1] != self.dim:
            raise PointSetError(
                f"points must be an (N, {self.dim}) array, got shape {pts.shape}"
            )
        if self.dim < 1:
            raise PointSetError("dim must be at least 1")
        if pts.shape[0] < 1:
            raise PointSetError("point set must contain at least one point")
        inside = (pts >= 0.0) & (pts < 1.0)
        if not bool(inside.all()):
            bad = np.argwhere(~inside)[0]
            raise PointSetError(
                "coordinate out of half-open range [0,1): point "
                f"{bad[0]}, dim {bad[1]}, value {pts[bad[0], bad[1]]!r}"
            )
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        if self.weights is not None:
            w = np.ascontiguousarray(self.weights, dtype=np.float64)
            if w.shape != (pts.shape[0],):
                raise PointSetError(
                    f"weight count mismatch: {w.shape[0] if w.ndim == 1 else w.shape} "
                    f"weights for {pts.shape[0]} points"
                )
            if not np.isfinite(w).all():
                raise PointSetError("weights must be finite")
            w.setflags(write=False)
            object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        """Cardinality N, counted with multiplicity (weights do not change it)."""
        return self.points.shape[0]

    @property
    def weighted(self) -> bool:
        return self.weights is not None

    def effective_weights(self) -> np.ndarray:
        """Weights as an array, defaulting to all ones."""
        if self.weights is not None:
            return self.weights
        return np.ones(self.n, dtype=np.float64)


def validate_point_set(
    raw_points: Sequence[Sequence[float]] | np.ndarray,
    raw_weights: Sequence[float] | np.ndarray | None = None,
    dim: int | None = None,
) -> PointSet:
    """Validate raw coordinates (and optional weights) into a PointSet.

    ``dim`` is inferred from the first point when omitted. Raises
    PointSetError on any invariant violation: coordinates outside [0,1),
    weight-count mismatch, empty input, or dim < 1.
    """
    pts = np.asarray(raw_points, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts.reshape(-1, 1)
    if pts.size == 0:
        raise PointSetError("point set must contain at least one point")
    if dim is None:
        dim = pts.shape[1]
    return PointSet(dim=dim, points=pts, weights=None if raw_weights is None else raw_weights)


@dataclass(frozen=True)
class DyadicIndex:
    """Index (levels, positions) of one tensor Haar function / dyadic box.

    Per axis i: levels[i] >= -1, and positions[i] in {0, ..., 2^levels[i] - 1}
    for levels[i] >= 0, positions[i] == 0 for levels[i] == -1. Level -1 stands
    for the constant indicator of [0,1).
    """

    levels: tuple[int, ...]
    positions: tuple[int, ...]

    def __post_init__(self) -> None:
        levels = tuple(int(j) for j in self.levels)
        positions = tuple(int(m) for m in self.positions)
        if len(levels) != len(positions) or not levels:
            raise ValueError("levels and positions must be equal-length, nonempty")
        for j, m in zip(levels, positions):
            if j < -1:
                raise ValueError(f"level {j} below -1")
            if j == -1:
                if m != 0:
                    raise ValueError(f"position must be 0 at level -1, got {m}")
            elif not 0 <= m < (1 << j):
                raise ValueError(f"position {m} outside [0, 2^{j}) at level {j}")
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "positions", positions)

    @property
    def dim(self) -> int:
        return len(self.levels)

    @property
    def level_sum(self) -> int:
        """Sum of max(0, level) over axes, the Parseval weight exponent."""
        return sum(max(0, j) for j in self.levels)

    def box_volume(self) -> float:
        """Volume of the supporting dyadic box, 2^(-level_sum)."""
        return 2.0 ** (-self.level_sum)

    def box_bounds(self) -> list[tuple[float, float]]:
        """Per-axis [left, right) bounds of the supporting box."""
        out = []
        for j, m in zip(self.levels, self.positions):
            if j == -1:
                out.append((0.0, 1.0))
            else:
                width = 2.0 ** (-j)
                out.append((m * width, (m + 1) * width))
        return out


def lower_bound_constant(d: int) -> float:
    """Norm-scale lower-bound constant for dimension d >= 2.

    Equals 7 / (27 * 2^(2d-1) * sqrt((d-1)!) * (ln 2)^((d-1)/2)); for d = 2
    this is 7 / (216 sqrt(ln 2)) = 0.038925...
    """
    if d < 2:
        raise ValueError("constant defined for d >= 2")
    ln2 = math.log(2.0)
    return 7.0 / (27.0 * 2.0 ** (2 * d - 1) * math.sqrt(math.factorial(d - 1)) * ln2 ** ((d - 1) / 2))


def classical_lower_bound_constant(d: int) -> float:
    """Previously best norm-scale constant, 1/(2^(2d+4) sqrt((d-1)!) (ln 2)^((d-1)/2))."""
    if d < 2:
        raise ValueError("constant defined for d >= 2")
    ln2 = math.log(2.0)
    return 1.0 / (2.0 ** (2 * d + 4) * math.sqrt(math.factorial(d - 1)) * ln2 ** ((d - 1) / 2))


@dataclass(frozen=True)
class Constants:
    """Optimized and comparison constants, exact where they are rational.

    gamma is the squared-scale level-sum constant, y_star its maximizer,
    improvement the ratio over the classical constant. c2 is the norm-scale
    two-dimensional constant; cd(d) generalizes it.
    """

    gamma: Rational = Rational(49, 46656)
    y_star: Rational = Rational(7, 9)
    improvement: Rational = Rational(224, 27)
    c2: float = field(default_factory=lambda: lower_bound_constant(2))
    classical_lower: float = field(
        default_factory=lambda: math.sqrt(1.0 / (2**16 * math.log(2.0)))
    )
    best_upper: float = field(
        default_factory=lambda: math.sqrt(278629.0 / (2811072.0 * math.log(22.0)))
    )

    def cd(self, d: int) -> float:
        """Norm-scale constant in dimension d (cd(2) == c2 exactly)."""
        return lower_bound_constant(d)

    def classical_cd(self, d: int) -> float:
        return classical_lower_bound_constant(d)

    def gamma_d(self, d: int) -> Rational:
        """Squared-scale constant (14/27)^2 / (2^(4d) (d-1)!); gamma_d(2) == gamma."""
        if d < 2:
            raise ValueError("constant defined for d >= 2")
        return Rational(14, 27) ** 2 / (Rational(2) ** (4 * d) * math.factorial(d - 1))


def constants_table() -> Constants:
    """Return the table of optimized constants."""
    return Constants()


# --------------------------------------------------------------------------
# Point-set text format: one point per line, whitespace-separated decimal
# coordinates, optional trailing weight column enabled by a '#weighted'
# header line. '#' lines are comments, blank lines are skipped.
# --------------------------------------------------------------------------


def format_float(x: float) -> str:
    """Round-trip-safe decimal form (shortest repr that parses back exactly)."""
    return repr(float(x))


def load_point_set(source: Union[str, Path, TextIO], dim: int | None = None) -> PointSet:
    """Parse the point-set text format; see the module docstring for details."""
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as handle:
            return load_point_set(handle, dim=dim)
    weighted = False
    rows: list[list[float]] = []
    for lineno, line in enumerate(source, start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            if stripped == "#weighted":
                if rows:
                    raise PointSetError(
                        f"line {lineno}: '#weighted' must precede all data lines"
                    )
                weighted = True
            continue
        try:
            values = [float(tok) for tok in stripped.split()]
        except ValueError as exc:
            raise PointSetError(f"line {lineno}: {exc}") from None
        rows.append(values)
    if not rows:
        raise PointSetError("no data lines in point-set file")
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise PointSetError("inconsistent column count across data lines")
    d = ncols - 1 if weighted else ncols
    if dim is not None and dim != d:
        raise PointSetError(f"expected dim {dim}, file has dim {d}")
    if d < 1:
        raise PointSetError("file has no coordinate columns")
    data = np.asarray(rows, dtype=np.float64)
    weights = data[:, d] if weighted else None
    return PointSet(dim=d, points=data[:, :d], weights=weights)


def save_point_set(ps: PointSet, target: Union[str, Path, TextIO]) -> None:
    """Write a PointSet in the text format accepted by load_point_set."""
    if isinstance(target, (str, Path)):
        with open(target, "w", encoding="utf-8") as handle:
            save_point_set(ps, handle)
        return
    if ps.weighted:
        target.write("#weighted\n")
    weights = ps.weights
    for i in range(ps.n):
        cols = [format_float(c) for c in ps.points[i]]
        if weights is not None:
            cols.append(format_float(weights[i]))
        target.write(" ".join(cols) + "\n")
