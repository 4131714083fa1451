"""Deterministic pseudo-random generation for every stochastic component.

The generator is splitmix64, used in counter mode: output ``k`` (1-based) of
the stream with seed ``s`` is ``mix64(s + k * 0x9E3779B97F4A7C15)`` where
``mix64`` is the usual xor-shift/multiply finalizer.  Uniform doubles take
the top 53 bits of an output word; Gaussian variates apply the Box-Muller
transform to consecutive output pairs.  Both choices are deliberate: the
streams are trivial to reproduce bit-for-bit in any language, which keeps
generated fixtures portable across implementations.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB
_TO_UNIT = 2.0 ** -53


class SplitMix64:
    """A splitmix64 stream offering scalar and bulk (numpy) draws.

    Scalar and bulk draws advance the same counter, so interleaving them
    never changes the underlying word sequence.
    """

    def __init__(self, seed: int):
        self._seed = int(seed) & _MASK
        self._count = 0

    def uint64(self, count: int) -> np.ndarray:
        """Next ``count`` raw 64-bit words as a uint64 array."""
        if count < 0:
            raise ValueError("count must be nonnegative")
        ks = np.arange(self._count + 1, self._count + count + 1, dtype=np.uint64)
        self._count += count
        z = np.uint64(self._seed) + ks * np.uint64(_GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX_A)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX_B)
        return z ^ (z >> np.uint64(31))

    def next_uint64(self) -> int:
        """Next raw word as a Python int (fast scalar path)."""
        self._count += 1
        z = (self._seed + self._count * _GAMMA) & _MASK
        z = ((z ^ (z >> 30)) * _MIX_A) & _MASK
        z = ((z ^ (z >> 27)) * _MIX_B) & _MASK
        return z ^ (z >> 31)

    def next_uniform(self) -> float:
        """Next uniform double in [0, 1)."""
        return (self.next_uint64() >> 11) * _TO_UNIT

    def uniforms(self, count: int) -> np.ndarray:
        """Next ``count`` uniform doubles in [0, 1)."""
        return (self.uint64(count) >> np.uint64(11)).astype(np.float64) * _TO_UNIT

    def normals(self, count: int) -> np.ndarray:
        """Next ``count`` standard Gaussian variates via Box-Muller.

        Word 2i feeds the radius (mapped to (0, 1] so the log is finite)
        and word 2i+1 the angle; the resulting pair is emitted in order.
        An odd ``count`` still consumes a whole pair.
        """
        if count < 0:
            raise ValueError("count must be nonnegative")
        pairs = (count + 1) // 2
        raw = self.uint64(2 * pairs)
        u1 = ((raw[0::2] >> np.uint64(11)).astype(np.float64) + 1.0) * _TO_UNIT
        u2 = (raw[1::2] >> np.uint64(11)).astype(np.float64) * _TO_UNIT
        radius = np.sqrt(-2.0 * np.log(u1))
        angle = (2.0 * np.pi) * u2
        out = np.empty(2 * pairs)
        out[0::2] = radius * np.cos(angle)
        out[1::2] = radius * np.sin(angle)
        return out[:count]
