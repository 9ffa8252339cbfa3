"""Portable seeded pseudorandomness.

SplitMix64 (Steele, Lea, Flood 2014): state += 0x9E3779B97F4A7C15, then the
output mix ``z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
z *= 0x94D049BB133111EB; z ^= z >> 31`` (all mod 2**64). Bounded draws use
Lemire's multiply-shift with rejection, so every implementation given the same
seed produces the same permutations and samples.
"""

from __future__ import annotations

from fractions import Fraction

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)``."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        threshold = (1 << 64) % bound
        while True:
            m = self.next() * bound
            if (m & MASK64) >= threshold:
                return m >> 64

    def shuffle(self, items: list) -> list:
        """Fisher-Yates from the top: swap ``i`` with ``below(i + 1)`` for i = n-1..1."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
        return items

    def bernoulli(self, p: Fraction) -> bool:
        """True with probability exactly ``p`` on the 64-bit output grid."""
        return self.next() * p.denominator < p.numerator << 64
