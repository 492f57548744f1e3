"""Bit-level helpers shared across the package.

Popcounts over index arrays, subset-mask formatting, and a counter-based
random source keyed on (seed, index) so that every random value is a pure
function of its key, independent of evaluation order.
"""

from __future__ import annotations

import functools

import numpy as np

# 2^26 doubles is ~0.5 GiB; everything stays desk-scale below this.
MAX_ARITY = 26

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15  # splitmix64 increment


def popcounts(masks: np.ndarray) -> np.ndarray:
    """Per-element popcount as int64 (np.bitwise_count yields uint8)."""
    return np.bitwise_count(masks).astype(np.int64)


@functools.lru_cache(maxsize=8)
def _index_popcounts_cached(n: int) -> np.ndarray:
    pc = popcounts(np.arange(1 << n))
    pc.setflags(write=False)
    return pc


def index_popcounts(n: int) -> np.ndarray:
    """Popcount of every index in [0, 2^n); cached (read-only) for small n."""
    if n <= 20:
        return _index_popcounts_cached(n)
    return popcounts(np.arange(1 << n))


def format_subset(mask: int) -> str:
    """Render a subset bitmask as e.g. '{1,3}' (variables are 1-based)."""
    if mask == 0:
        return "{}"
    members = [str(i + 1) for i in range(int(mask).bit_length()) if (mask >> i) & 1]
    return "{" + ",".join(members) + "}"


def _mix64_int(z: int) -> int:
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, stream: int) -> int:
    """Deterministic child seed for (seed, stream)."""
    return _mix64_int((_mix64_int(seed) + (stream + 1) * _GAMMA) & _MASK64)


def _mix64(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def counter_uniform(seed: int, indices: np.ndarray) -> np.ndarray:
    """Uniform [0,1) doubles keyed on (seed, index).

    The draw at a given index is the same no matter how the index array is
    ordered or sliced, which makes seeded tables and roundings reproducible
    and safe to evaluate in parallel.
    """
    base = np.uint64(_mix64_int(seed))
    z = base + (np.asarray(indices).astype(np.uint64) + np.uint64(1)) * np.uint64(_GAMMA)
    return (_mix64(z) >> np.uint64(11)).astype(np.float64) * 2.0**-53
