"""Small deterministic generator for the randomized time stepping.

xorshift64* is used so that runs are bit-reproducible across platforms and
implementations.  State transition on the 64-bit state x:

    x ^= x >> 12;  x ^= (x << 25) & MASK64;  x ^= x >> 27
    output = (x * 2685821657736338717) & MASK64

A uniform double in [0, 1) is the top 53 bits of the output scaled by 2**-53.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_MULT = 2685821657736338717
# splitmix-style constant used to displace user seeds away from the forbidden
# all-zero state
_SEED_OFFSET = 0x9E3779B97F4A7C15


class XorShift64Star:
    """Seeded xorshift64* stream; equal seeds give equal streams."""

    def __init__(self, seed: int = 0):
        self.state = (int(seed) ^ _SEED_OFFSET) & _MASK64
        if self.state == 0:
            self.state = _SEED_OFFSET

    def next_raw(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & _MASK64
        x ^= x >> 27
        self.state = x
        return (x * _MULT) & _MASK64

    def uniform(self) -> float:
        """Uniform double in [0, 1)."""
        return (self.next_raw() >> 11) * 2.0 ** -53

    def symmetric(self) -> float:
        """Uniform double in [-1/2, 1/2)."""
        return self.uniform() - 0.5
