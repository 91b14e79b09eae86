"""Deterministic random stream used by the diffusion machinery.

The raw stream is SplitMix64 evaluated at consecutive counter values:
draw k (0-based) is mix64(seed + (k + 1) * GAMMA), so a batch of n draws
is the same sequence as n single draws. Uniforms take the top 53 bits of
a raw word; normals come from Box-Muller pairs consumed in row-major
element order, with the trailing spare discarded when an odd number of
elements is requested.
"""

import numpy as np

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_U64_MASK = 0xFFFFFFFFFFFFFFFF
_TWO53 = float(1 << 53)


class Rng:
    """Seeded, reproducible stream of uniforms and standard normals."""

    def __init__(self, seed: int):
        self._seed = np.uint64(int(seed) & _U64_MASK)
        self._count = 0

    def _raw(self, n: int) -> np.ndarray:
        if n < 1:
            raise ValueError(f"draw count must be >= 1, got {n}")
        ks = np.arange(self._count + 1, self._count + n + 1, dtype=np.uint64)
        self._count += n
        z = self._seed + ks * _GAMMA
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        return z ^ (z >> np.uint64(31))

    def uniform(self, shape=()) -> np.ndarray:
        """Uniform draws in [0, 1) with 53-bit resolution."""
        shape = tuple(np.atleast_1d(shape).astype(int)) if shape != () else ()
        n = int(np.prod(shape, dtype=np.int64)) if shape else 1
        u = (self._raw(n) >> np.uint64(11)).astype(float) / _TWO53
        return u.reshape(shape) if shape else float(u[0])

    def randint(self, high: int) -> int:
        """Uniform integer in {1, ..., high} from one uniform draw."""
        high = int(high)
        if high < 1:
            raise ValueError(f"high must be >= 1, got {high}")
        u = (int(self._raw(1)[0]) >> 11) / _TWO53
        return 1 + min(int(u * high), high - 1)

    def normal(self, shape) -> np.ndarray:
        """Standard normal draws via Box-Muller.

        Pair j uses raw words (2j, 2j + 1): the first maps to (0, 1] for
        the log radius, the second to [0, 1) for the angle.
        """
        shape = tuple(int(d) for d in np.atleast_1d(shape))
        n = int(np.prod(shape, dtype=np.int64))
        if n < 1:
            raise ValueError(f"shape must hold at least one element, got {shape}")
        pairs = (n + 1) // 2
        raw = self._raw(2 * pairs)
        u1 = ((raw[0::2] >> np.uint64(11)).astype(float) + 1.0) / _TWO53
        u2 = (raw[1::2] >> np.uint64(11)).astype(float) / _TWO53
        radius = np.sqrt(-2.0 * np.log(u1))
        angle = (2.0 * np.pi) * u2
        out = np.empty(2 * pairs)
        out[0::2] = radius * np.cos(angle)
        out[1::2] = radius * np.sin(angle)
        return out[:n].reshape(shape)
