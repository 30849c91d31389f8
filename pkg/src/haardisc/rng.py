"""Counter-based deterministic random numbers (SplitMix64 finalizer).

Every value is a pure function of (seed, counter), so streams are stateless,
reproducible across platforms, and safe to evaluate in any order or in
parallel. The mapping is the standard SplitMix64 step: the counter is scaled
by the 64-bit golden-ratio constant, added to the seed, and passed through
the three xor-multiply finalization rounds. Doubles take the top 53 bits.
"""

from __future__ import annotations

import numpy as np

__all__ = ["mix64", "uniform01", "uniform_block"]

_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_MASK = (1 << 64) - 1


def mix64(value: int) -> int:
    """SplitMix64 finalizer on a 64-bit integer."""
    z = value & _MASK
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


def uniform01(seed: int, counter: int) -> float:
    """Uniform double in [0,1) for one (seed, counter) pair."""
    bits = mix64((seed + (counter + 1) * _GOLDEN) & _MASK)
    return (bits >> 11) * 2.0**-53


def uniform_block(seed: int, start: int, count: int) -> np.ndarray:
    """Vectorized uniform01 for counters start .. start+count-1."""
    counters = np.arange(start, start + count, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = (np.uint64(seed) + (counters + np.uint64(1)) * np.uint64(_GOLDEN))
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)).astype(np.float64) * 2.0**-53
