"""Empty-box lower-bound certificates for the squared L2 discrepancy.

The chain: at every level vector with total level k >= ceil(log2 N), at least
2^k - N dyadic boxes contain no point in their open interior. Each empty box
pins its coefficient to -N * |volume coefficient| exactly, contributing
N^2 * 2^(-3k-4d) to the squared norm after the basis weight. Summing actual
empty counts over levels gives a rigorous empirical lower bound (a subsum of
the full orthogonal expansion); closed-form level sums give the guaranteed
pigeonhole bound; maximizing a cubic in y = N * 2^(-ceil(log2 N)) yields the
constant gamma = 49/46656 behind the theoretical bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Iterator, Sequence

import numpy as np

from .core import (
    DEFAULT_ENUMERATION_BUDGET,
    BudgetExceededError,
    Constants,
    PointSet,
    Rational,
)
from .discrepancy import warnock_l2
from .haar import parseval_partial_sum

__all__ = [
    "LevelReport",
    "CertificateReport",
    "level_sum_closed_form",
    "level_sum_bruteforce",
    "level_sum_leading_coeff_d",
    "gamma_objective",
    "gamma_objective_d",
    "gamma_maximize",
    "theoretical_lower_bound",
    "count_empty_boxes",
    "certify",
    "verify_constant_identities",
]


def level_sum_closed_form(q, M: int):
    """Closed form of sum_{k>=M} (k+1) q^(-k) for q > 1 (two-axis level sum).

    Equals q^(-M+1) * (M/(q-1) + q/(q-1)^2). Exact when q is a Fraction.
    Valid for M >= 0 (M = 0 arises only for single-point sets).
    """
    if q <= 1:
        raise ValueError("q must be greater than 1")
    if M < 0:
        raise ValueError("M must be nonnegative")
    return q ** (-M + 1) * (M / (q - 1) + q / (q - 1) ** 2)


def level_sum_bruteforce(q, M: int, d: int = 2, terms: int = 200):
    """Direct tail sum_{k=M}^{M+terms-1} C(k+d-1, d-1) q^(-k) for validation."""
    if q <= 1:
        raise ValueError("q must be greater than 1")
    total = 0 * q
    for k in range(M, M + terms):
        total += math.comb(k + d - 1, d - 1) * q ** (-k)
    return total


def level_sum_leading_coeff_d(q, M: int, d: int):
    """Coefficient of M^(d-1) in the d-axis level sum: q^(-M+1)/((q-1)(d-1)!).

    The full tail sum_{k>=M} C(k+d-1, d-1) q^(-k) equals this coefficient
    times M^(d-1) plus lower-order terms in M; level_sum_bruteforce provides
    the reference value.
    """
    if q <= 1:
        raise ValueError("q must be greater than 1")
    if d < 2:
        raise ValueError("d must be at least 2")
    return q ** (-M + 1) / ((q - 1) * math.factorial(d - 1))


def gamma_objective(y):
    """The two-axis optimization objective (1/192) y^2 - (1/224) y^3.

    Exact for Fraction input; the certified range is 1/2 < y <= 1.
    """
    if isinstance(y, Fraction):
        return Fraction(1, 192) * y**2 - Fraction(1, 224) * y**3
    return y * y / 192.0 - y * y * y / 224.0


def gamma_objective_d(y, d: int):
    """d-axis objective (4/3 y^2 - 8/7 y^3) / (2^(4d) (d-1)!); max at y = 7/9."""
    if d < 2:
        raise ValueError("d must be at least 2")
    if isinstance(y, Fraction):
        scale = Fraction(1, 2 ** (4 * d) * math.factorial(d - 1))
        return scale * (Fraction(4, 3) * y**2 - Fraction(8, 7) * y**3)
    scale = 1.0 / (2.0 ** (4 * d) * math.factorial(d - 1))
    return scale * (4.0 / 3.0 * y * y - 8.0 / 7.0 * y**3)


def _golden_section_max(f: Callable[[float], float], lo: float, hi: float, tol: float) -> float:
    """Argmax of a unimodal f on [lo, hi] by golden-section search."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    return (a + b) / 2.0


def gamma_maximize() -> tuple[Rational, Rational]:
    """Maximize gamma_objective over (1/2, 1]: returns (7/9, 49/46656) exactly.

    The stationary point solves 2y/192 = 3y^2/224 analytically; a
    golden-section search cross-checks it numerically before returning.
    """
    y_star = Fraction(7, 9)
    gamma = gamma_objective(y_star)
    # derivative must vanish exactly at the returned argmax
    derivative = Fraction(2, 192) * y_star - Fraction(3, 224) * y_star**2
    if derivative != 0 or gamma != Fraction(49, 46656):
        raise AssertionError("analytic maximizer failed exact verification")
    y_num = _golden_section_max(gamma_objective, 0.5, 1.0, 1e-12)
    if abs(y_num - float(y_star)) > 1e-6 or abs(gamma_objective(y_num) - float(gamma)) > 1e-14:
        raise AssertionError("golden-section search disagrees with analytic maximizer")
    return y_star, gamma


def theoretical_lower_bound(n: int, d: int) -> float:
    """Norm-scale lower bound c_d (ln N)^((d-1)/2); zero for N = 1."""
    if n < 1:
        raise ValueError("N must be at least 1")
    if n == 1:
        return 0.0
    return Constants().cd(d) * math.log(n) ** ((d - 1) / 2)


def count_empty_boxes(
    ps: PointSet, levels: Sequence[int], budget: int | None = None
) -> tuple[int, int]:
    """Count dyadic boxes at a level vector whose open interior misses ps.

    Occupancy is found by bucketing each point (O(N), not by enumerating
    boxes); a point lying on a grid hyperplane of the level occupies no box.
    Returns (empty, total) with total = 2^(sum of levels).
    """
    levels = tuple(int(j) for j in levels)
    if len(levels) != ps.dim:
        raise ValueError(f"level vector has dim {len(levels)}, point set {ps.dim}")
    if any(j < 0 for j in levels):
        raise ValueError("all levels must be >= 0")
    total = 1 << sum(levels)
    if budget is not None and total > budget:
        raise BudgetExceededError(f"{total} boxes exceeds budget {budget}")
    valid = np.ones(ps.n, dtype=bool)
    code = np.zeros(ps.n, dtype=np.int64)
    for i, j in enumerate(levels):
        scaled = ps.points[:, i] * float(1 << j)  # exact power-of-two scale
        b = np.floor(scaled)
        valid &= scaled != b
        code = (code << j) | b.astype(np.int64)
    occupied = int(np.unique(code[valid]).size)
    return total - occupied, total


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of `parts` nonnegative ints summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


@dataclass(frozen=True)
class LevelReport:
    """Empty-box statistics for all level vectors with one total level."""

    level_sum: int
    boxes_total: int
    boxes_empty: int
    guaranteed_empty: int
    energy: float

    def to_dict(self) -> dict:
        return {
            "k": self.level_sum,
            "total": self.boxes_total,
            "empty": self.boxes_empty,
            "guaranteed": self.guaranteed_empty,
            "energy": self.energy,
        }


@dataclass(frozen=True)
class CertificateReport:
    """Outcome of the empty-box certificate for one point set.

    min_level is ceil(log2 N); log2_gap = min_level - log2 N lies in [0,1)
    and fill_ratio = N / 2^min_level in (1/2, 1]. empirical_lower sums the
    energies of observed empty boxes (a rigorous lower bound on the squared
    norm); guaranteed_lower is the closed-form pigeonhole chain (two axes
    only); theoretical_lower is gamma_d * (log2 N)^(d-1). For d >= 3 the
    pass flag compares only the empirical bound; a theoretical shortfall is
    flagged separately instead of failing.
    """

    n: int
    dim: int
    weighted: bool
    min_level: int
    log2_gap: float
    fill_ratio: float
    levels: tuple[LevelReport, ...]
    empirical_lower: float
    theoretical_lower: float
    guaranteed_lower: float | None
    exact_l2sq: float
    passed: bool
    theoretical_shortfall: bool
    parseval_partial: float | None = None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.dim,
            "weighted": self.weighted,
            "min_level": self.min_level,
            "log2_gap": self.log2_gap,
            "fill_ratio": self.fill_ratio,
            "levels": [lv.to_dict() for lv in self.levels],
            "empirical_lower": self.empirical_lower,
            "theoretical_lower": self.theoretical_lower,
            "guaranteed_lower": self.guaranteed_lower,
            "exact_l2sq": self.exact_l2sq,
            "pass": self.passed,
            "theoretical_shortfall": self.theoretical_shortfall,
            "parseval_partial": self.parseval_partial,
        }


def certify(
    ps: PointSet,
    k_max: int | None = None,
    kmax_offset: int = 20,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
    force: bool = False,
    diagnostic_j_max: int | None = None,
) -> CertificateReport:
    """Run the empty-box certificate on one point set.

    Levels k = min_level .. k_max (default min_level + kmax_offset) are
    scanned; each empty box at total level k adds N^2 2^(-3k-4d) to the
    empirical lower bound. The bound never depends on the weights (empty-box
    coefficients do not see them); the exact norm it is compared against
    does. diagnostic_j_max additionally records a full partial sum including
    occupied boxes.
    """
    n, d = ps.n, ps.dim
    min_level = (n - 1).bit_length()
    if k_max is None:
        k_max = min_level + kmax_offset
    if k_max < min_level:
        raise ValueError(f"k_max {k_max} below min_level {min_level}")
    work = sum(math.comb(k + d - 1, d - 1) for k in range(min_level, k_max + 1)) * n
    if work > budget and not force:
        raise BudgetExceededError(
            f"certificate scan needs ~{work:.3g} point passes, over budget {budget:.3g}"
        )
    log2_gap = min_level - math.log2(n)
    fill_ratio = n / (2.0**min_level)

    reports: list[LevelReport] = []
    empirical = 0.0
    for k in range(min_level, k_max + 1):
        n_comps = math.comb(k + d - 1, d - 1)
        boxes_total = n_comps * (1 << k)
        guaranteed = n_comps * max(0, (1 << k) - n)
        empty_total = 0
        for comp in _compositions(k, d):
            empty, _ = count_empty_boxes(ps, comp)
            empty_total += empty
        energy = empty_total * (n * n * 2.0 ** (-3 * k - 4 * d))
        reports.append(
            LevelReport(
                level_sum=k,
                boxes_total=boxes_total,
                boxes_empty=empty_total,
                guaranteed_empty=guaranteed,
                energy=energy,
            )
        )
        empirical += energy

    exact = warnock_l2(ps).l2_norm_squared
    gamma_d = float(Constants().gamma_d(d))
    theoretical = gamma_d * math.log2(n) ** (d - 1) if n > 1 else 0.0
    guaranteed_lower = None
    if d == 2:
        s4 = level_sum_closed_form(4.0, min_level)
        s8 = level_sum_closed_form(8.0, min_level)
        guaranteed_lower = 2.0**-8 * n * n * (s4 - n * s8)
    shortfall = exact < theoretical
    if d == 2:
        passed = (exact >= theoretical) and (exact >= empirical)
    else:
        passed = exact >= empirical
    parseval_partial = None
    if diagnostic_j_max is not None:
        parseval_partial = parseval_partial_sum(ps, diagnostic_j_max, budget=budget, force=force)
    return CertificateReport(
        n=n,
        dim=d,
        weighted=ps.weighted,
        min_level=min_level,
        log2_gap=log2_gap,
        fill_ratio=fill_ratio,
        levels=tuple(reports),
        empirical_lower=empirical,
        theoretical_lower=theoretical,
        guaranteed_lower=guaranteed_lower,
        exact_l2sq=exact,
        passed=passed,
        theoretical_shortfall=shortfall,
        parseval_partial=parseval_partial,
    )


def verify_constant_identities() -> None:
    """Exact-arithmetic self-test of every rational constant identity."""
    if Fraction(7, 216) ** 2 != Fraction(49, 46656):
        raise AssertionError("(7/216)^2 != 49/46656")
    if gamma_objective(Fraction(7, 9)) != Fraction(49, 46656):
        raise AssertionError("objective at 7/9 != 49/46656")
    if gamma_objective_d(Fraction(7, 9), 2) != Fraction(49, 46656):
        raise AssertionError("d=2 objective at 7/9 != 49/46656")
    for d in range(2, 9):
        ratio = Fraction(7, 27 * 2 ** (2 * d - 1)) / Fraction(1, 2 ** (2 * d + 4))
        if ratio != Fraction(224, 27):
            raise AssertionError(f"improvement ratio broken at d={d}")
    consts = Constants()
    if consts.gamma_d(2) != consts.gamma:
        raise AssertionError("gamma_d(2) != gamma")


verify_constant_identities()
