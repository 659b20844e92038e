"""Deterministic 64-bit generator (SplitMix64) for reproducible verification.

The stream is part of the tool's external contract: verification reports must
be byte-reproducible from the seed alone, independent of platform or numpy
version, so the generator is spelled out here rather than delegated.

State update:   s_{n+1} = (s_n + 0x9E3779B97F4A7C15) mod 2^64
Output mixing:  z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9;
                z ^= z >> 27;  z *= 0x94D049BB133111EB;
                z ^= z >> 31        (all mod 2^64)
Floats:         (z >> 11) * 2^-53, uniform on [0, 1)
uniform(lo,hi): lo + u * (hi - lo)

Reference vector: seed 0 produces 0xE220A8397B1DCDAF first.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX_1 = 0xBF58476D1CE4E5B9
_MIX_2 = 0x94D049BB133111EB


class SplitMix64:
    """Counter-based splittable PRNG with a 64-bit state."""

    __slots__ = ("state",)

    def __init__(self, seed: int) -> None:
        self.state = seed & _MASK64

    def next_uint64(self) -> int:
        self.state = (self.state + _GOLDEN_GAMMA) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX_1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX_2) & _MASK64
        return z ^ (z >> 31)

    def next_float(self) -> float:
        """Uniform float in [0, 1) from the top 53 bits."""
        return (self.next_uint64() >> 11) * 2.0**-53

    def uniform(self, lo: float, hi: float) -> float:
        """Uniform float in [lo, hi) (hi excluded up to rounding)."""
        return lo + (hi - lo) * self.next_float()
