"""Independent reference implementations used to freeze expected values.

Everything here deliberately avoids the closed forms under test: integrals go
through scipy's adaptive quadrature, counts through brute-force loops.
"""

import numpy as np
from scipy import integrate

import haardisc as hd


def quad_tail_integral(level, position, z):
    """Adaptive quadrature of the 1-D Haar function over [z, 1)."""
    def f(t):
        return hd.haar_eval_1d(level, position, t)
    pts = []
    if level >= 0:
        width = 2.0 ** (-level)
        for p in (position * width, position * width + width / 2.0, (position + 1) * width):
            if z < p < 1.0:
                pts.append(p)
    val, _ = integrate.quad(f, z, 1.0, points=pts or None, limit=200, epsabs=1e-14)
    return val


def quad_volume_coeff_1d(level):
    """Adaptive quadrature of t * haar(t) over [0,1) (any position works)."""
    def f(t):
        return t * hd.haar_eval_1d(level, 0, t)
    pts = None
    if level >= 0:
        width = 2.0 ** (-level)
        pts = [width / 2.0, width]
    val, _ = integrate.quad(f, 0.0, 1.0, points=pts, limit=200, epsabs=1e-14)
    return val


def quad_haar_coeff_2d(ps, index):
    """2-D adaptive quadrature of the discrepancy function against one
    tensor Haar function, restricted to the function's support box."""
    bounds = index.box_bounds()
    breakpoints = []
    for axis, (lo, hi) in enumerate(bounds):
        cuts = sorted({(lo + hi) / 2.0, *ps.points[:, axis].tolist()})
        breakpoints.append([c for c in cuts if lo < c < hi])

    def f(x1, x2):
        return hd.discrepancy_at(ps, (x1, x2)) * hd.haar_eval(index, (x1, x2))

    opts = [
        {"points": breakpoints[0], "limit": 100, "epsabs": 1e-12, "epsrel": 1e-12},
        {"points": breakpoints[1], "limit": 100, "epsabs": 1e-12, "epsrel": 1e-12},
    ]
    val, _ = integrate.nquad(f, bounds, opts=opts)
    return val


def bruteforce_radical_inverse(n):
    """Digit-by-digit base-2 radical inverse."""
    value = 0.0
    scale = 0.5
    while n:
        value += scale * (n & 1)
        n >>= 1
        scale /= 2.0
    return value


def bruteforce_empty_boxes(ps, levels):
    """O(total boxes * N) empty-box count by explicit enumeration."""
    d = ps.dim
    counts = {}
    total = 1
    for j in levels:
        total <<= j
    empty = 0
    from itertools import product
    for m in product(*(range(1 << j) for j in levels)):
        occupied = False
        for z in ps.points:
            inside = True
            for axis in range(d):
                width = 2.0 ** (-levels[axis])
                lo = m[axis] * width
                if not lo < z[axis] < lo + width:
                    inside = False
                    break
            if inside:
                occupied = True
                break
        if not occupied:
            empty += 1
    return empty, total


def random_point_set(rng, n, d, weighted=False, weight_lo=-1.0, weight_hi=2.0):
    """Seeded random point set, optionally with (possibly negative) weights."""
    pts = rng.random((n, d))
    weights = rng.uniform(weight_lo, weight_hi, size=n) if weighted else None
    return hd.validate_point_set(pts, weights)
