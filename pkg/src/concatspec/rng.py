"""Pinned pseudorandom stream used everywhere randomness is needed.

The generator is SplitMix64 (Steele, Lea, Flood 2014), fixed here so that
seeded results (interleaver permutations, Monte Carlo erasure patterns) are
bit-identical on every platform and Python version:

    state <- (state + 0x9E3779B97F4A7C15) mod 2^64
    z <- state
    z <- ((z xor (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2^64
    z <- ((z xor (z >> 27)) * 0x94D049BB133111EB) mod 2^64
    output z xor (z >> 31)

Bounded draws use rejection sampling on the top of the 2^64 range, and
shuffling is the classic Fisher-Yates walk from the last index down.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

# multiplier used to derive independent per-trial streams in the Monte Carlo
# simulator: trial t of run seed s starts from mix64(s xor (t+1)*TRIAL_GAMMA)
TRIAL_GAMMA = 0xD1342543DE82EF95


def mix64(x: int) -> int:
    """SplitMix64 finalizer: a 64-bit bijective scrambler."""
    z = x & MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Deterministic 64-bit stream; identical output for identical seeds."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return mix64(self.state)

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection (no modulo bias)."""
        if n <= 0:
            raise ValueError("randbelow needs n >= 1")
        limit = (MASK64 + 1) - ((MASK64 + 1) % n)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]
