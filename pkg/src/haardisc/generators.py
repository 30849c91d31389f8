"""Point-set generators spanning good and bad distributions.

All constructions keep coordinates inside [0,1). The random generator is the
counter-based stream from ``rng`` (SplitMix64 finalizer), so a seed fully
determines the set on every platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import PointSet
from .rng import mix64, uniform_block

__all__ = ["GeneratorSpec", "KINDS", "radical_inverse_base2", "generate"]

KINDS = (
    "hammersley",
    "van_der_corput",
    "symmetrized_hammersley",
    "random_uniform",
    "regular_grid",
    "digit_shift_hammersley",
)

_ONE_BELOW = math.nextafter(1.0, 0.0)


@dataclass(frozen=True)
class GeneratorSpec:
    """Which set to build: kind, size, dimension, and randomization inputs."""

    kind: str
    n: int
    dim: int = 2
    seed: int | None = None
    shift: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.dim < 1:
            raise ValueError("dim must be at least 1")
        planar = ("hammersley", "symmetrized_hammersley", "digit_shift_hammersley")
        if self.kind in planar and self.dim != 2:
            raise ValueError(f"{self.kind} requires dim 2")
        if self.kind == "van_der_corput" and self.dim != 1:
            raise ValueError("van_der_corput requires dim 1")
        if self.shift is not None and any(b not in (0, 1) for b in self.shift):
            raise ValueError("shift must be a bit vector")


def radical_inverse_base2(n: int) -> float:
    """Base-2 radical inverse: reverse the binary digits across the radix point."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    bits = n.bit_length()
    rev = 0
    for _ in range(bits):
        rev = (rev << 1) | (n & 1)
        n >>= 1
    return rev / float(1 << bits) if bits else 0.0


def _shifted_inverse(i: int, digits: int, shift_int: int) -> float:
    """Radical inverse of i carried on `digits` fractional digits, with the
    shift pattern XORed onto those digits (first entry hits the top digit)."""
    rev = 0
    v = i
    for _ in range(digits):
        rev = (rev << 1) | (v & 1)
        v >>= 1
    return (rev ^ shift_int) / float(1 << digits)


def generate(spec: GeneratorSpec) -> PointSet:
    """Build the point set described by spec.

    hammersley: (i/n, radical_inverse(i)); symmetrized_hammersley adds the
    reflected copy (i/n, 1 - radical_inverse(i)) for 2n points total;
    digit_shift_hammersley XORs a bit pattern onto the fractional digits of
    the second coordinate; random_uniform is the seeded counter stream;
    regular_grid is the floor(n^(1/d))^d lattice of cell centers.
    """
    n, d = spec.n, spec.dim
    kind = spec.kind
    if kind == "van_der_corput":
        pts = np.array([[radical_inverse_base2(i)] for i in range(n)])
        return PointSet(dim=1, points=pts)
    if kind == "hammersley":
        pts = np.array([[i / n, radical_inverse_base2(i)] for i in range(n)])
        return PointSet(dim=2, points=pts)
    if kind == "symmetrized_hammersley":
        rows = []
        for i in range(n):
            phi = radical_inverse_base2(i)
            rows.append([i / n, phi])
            mirrored = 1.0 - phi
            rows.append([i / n, _ONE_BELOW if mirrored >= 1.0 else mirrored])
        return PointSet(dim=2, points=np.array(rows))
    if kind == "digit_shift_hammersley":
        digits = max((n - 1).bit_length(), 1)
        if spec.shift is not None:
            bits = spec.shift[:digits]
        else:
            pattern = mix64(spec.seed if spec.seed is not None else 0)
            bits = tuple((pattern >> k) & 1 for k in range(digits))
        shift_int = 0
        for k, b in enumerate(bits):
            shift_int |= b << (digits - 1 - k)
        pts = np.array([[i / n, _shifted_inverse(i, digits, shift_int)] for i in range(n)])
        return PointSet(dim=2, points=pts)
    if kind == "random_uniform":
        seed = spec.seed if spec.seed is not None else 0
        pts = uniform_block(seed, 0, n * d).reshape(n, d)
        return PointSet(dim=d, points=pts)
    if kind == "regular_grid":
        side = max(1, round(n ** (1.0 / d)))
        while side**d > n:
            side -= 1
        while (side + 1) ** d <= n:
            side += 1
        axes = [(np.arange(side) + 0.5) / side] * d
        mesh = np.meshgrid(*axes, indexing="ij")
        pts = np.stack([m.ravel() for m in mesh], axis=1)
        return PointSet(dim=d, points=pts)
    raise ValueError(f"unknown generator kind {kind!r}")
