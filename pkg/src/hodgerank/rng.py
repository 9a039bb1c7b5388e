"""Deterministic, stream-keyed random number generation.

Every stochastic component (network sampling, disorder draws) obtains its
generator from a (seed, stream) pair.  The stream id is a 64-bit hash of the
integer coordinates identifying the draw site, so identical coordinates give
identical draw sequences on every platform and under any parallel schedule.
"""

from __future__ import annotations

import struct

import numpy as np

_MASK64 = (1 << 64) - 1


def mix64(x: int) -> int:
    """SplitMix64 finalizer; a bijective 64-bit mixing function."""
    x &= _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (x ^ (x >> 31)) & _MASK64


def stream_id(*parts: int) -> int:
    """Fold integer coordinates into a single 64-bit stream id.

    Folding is iterated mixing: h <- mix64(h XOR part), starting from a
    fixed odd constant, so distinct coordinate tuples collide only with
    generic 2^-64 probability.
    """
    h = 0x9E3779B97F4A7C15
    for p in parts:
        h = mix64(h ^ (int(p) & _MASK64))
    return h


def float_bits(x: float) -> int:
    """Raw IEEE-754 bits of a float, for use as a stream coordinate."""
    return struct.unpack("<Q", struct.pack("<d", float(x)))[0]


def make_rng(seed: int, stream: int) -> np.random.Generator:
    """Counter-based generator keyed by (seed, stream)."""
    key = np.array([int(seed) & _MASK64, int(stream) & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))
