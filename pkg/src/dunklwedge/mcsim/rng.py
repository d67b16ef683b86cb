"""Counter-based random streams from the SplitMix64 finaliser.

Draw ``k`` of path ``i`` is ``mix64(key_i + (k+1) * GOLDEN)`` with
``key_i = mix64(mix64(seed) ^ (i * GOLDEN + 1))``.  Any draw is addressable
without state, so paths can run in any order or in parallel.
"""

from __future__ import annotations

import numpy as np

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
M1 = np.uint64(0xBF58476D1CE4E5B9)
M2 = np.uint64(0x94D049BB133111EB)
INV53 = 1.0 / 9007199254740992.0  # 2**-53
SALT = np.uint64(0xD1B54A32D192ED03)  # side stream for step refinement


def mix64(z):
    """SplitMix64 finaliser on uint64 scalars or arrays (wrapping arithmetic)."""
    z = np.asarray(z, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = (z ^ (z >> np.uint64(30))) * M1
        z = (z ^ (z >> np.uint64(27))) * M2
    return z ^ (z >> np.uint64(31))


def path_keys(seed: int, index) -> np.ndarray:
    idx = np.asarray(index, dtype=np.uint64)
    base = mix64(np.uint64(seed & 0xFFFFFFFFFFFFFFFF))
    with np.errstate(over="ignore"):
        return mix64(base ^ (idx * GOLDEN + np.uint64(1)))


def uniforms(keys, counter) -> np.ndarray:
    """Uniform in (0, 1] for draw number ``counter`` of each key."""
    c = np.asarray(counter, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = mix64(keys + (c + np.uint64(1)) * GOLDEN)
    return ((z >> np.uint64(11)).astype(np.float64) + 1.0) * INV53


def normal_pair(keys, counter):
    """Two independent normals from draws ``counter`` and ``counter+1`` (Box-Muller)."""
    u1 = uniforms(keys, counter)
    u2 = uniforms(keys, np.asarray(counter, dtype=np.uint64) + np.uint64(1))
    rad = np.sqrt(-2.0 * np.log(u1))
    ang = 2.0 * np.pi * u2
    return rad * np.cos(ang), rad * np.sin(ang)
