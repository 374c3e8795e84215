"""Keyed pseudorandom generator used for position selection and noise attacks.

The generator is fully specified so independent implementations reproduce the
exact same streams bit-for-bit:

* splitmix64 core. State advances by the 64-bit odd constant
  0x9E3779B97F4A7C15; each output word is the advanced state mixed by
  ``z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
  z *= 0x94D049BB133111EB; z ^= z >> 31`` with all arithmetic modulo 2**64.
* Bounded draws are ``next_u64() % bound`` (the modulo bias is irrelevant at
  the bounds used here and keeps the definition one line).
* Permutations come from a Fisher-Yates shuffle of ``0..n-1`` running
  forward: at step ``i`` swap index ``i`` with ``i + next_below(n - i)``.
  Stopping after ``k`` steps yields ``k`` distinct uniform indices (a
  partial shuffle), which is how noise sites are sampled.
"""

import numpy as np

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """Deterministic 64-bit stream seeded by an unsigned integer key."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def next_below(self, bound: int) -> int:
        """Draw an integer in [0, bound)."""
        return self.next_u64() % bound

    def partial_shuffle(self, n: int, k: int) -> list:
        """First k entries of a Fisher-Yates permutation of 0..n-1."""
        idx = list(range(n))
        for i in range(min(k, n - 1)):
            j = i + self.next_below(n - i)
            idx[i], idx[j] = idx[j], idx[i]
        return idx[:k]


def permutation(n: int, seed: int) -> np.ndarray:
    """Keyed permutation of 0..n-1 as an int64 array."""
    return np.array(SplitMix64(seed).partial_shuffle(n, n), dtype=np.int64)
