"""Seeded random generator used everywhere randomness is needed.

The whole point of carrying a seed through the assembly pipeline is that a
generation can be replayed exactly, on any machine, in any language.  That
only works if the generator itself is pinned down, so this module implements
SplitMix64 (Vigna's public-domain reference generator) rather than relying on
the host language's default RNG.  The exact contract, including the bounded
draw and shuffle procedures, is documented in docs/determinism.md; any
reimplementation that follows it reproduces identical clip sequences.

All state fits in one 64-bit integer, instances are cheap, and nothing here
is shared, so every call site owns its own generator derived from the caller's
seed.
"""

from __future__ import annotations

from typing import MutableSequence, Sequence, TypeVar

_T = TypeVar("_T")

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """SplitMix64 output mixing function (the 'mix' stage of the reference)."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1F4EE297) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_subseed(seed: int, index: int) -> int:
    """Derive the seed for sub-stream `index` (restart attempts, per-item seeds).

    Defined as mix64(seed + (index + 1) * GOLDEN_GAMMA), all mod 2^64, so the
    derivation is stateless and reproducible without running the parent stream.
    """
    return mix64((seed + ((index + 1) * GOLDEN_GAMMA)) & MASK64)


class SplitMix64:
    """The SplitMix64 sequence: state += GOLDEN_GAMMA, output = mix64(state)."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + GOLDEN_GAMMA) & MASK64
        return mix64(self._state)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) via rejection sampling (no modulo bias).

        Draws 64-bit words and rejects any >= floor(2^64 / n) * n.
        """
        if n <= 0:
            raise ValueError("below() requires n >= 1")
        threshold = (1 << 64) - ((1 << 64) % n)
        while True:
            u = self.next_u64()
            if u < threshold:
                return u % n

    def choice(self, seq: Sequence[_T]) -> _T:
        if not seq:
            raise ValueError("choice() on empty sequence")
        return seq[self.below(len(seq))]

    def shuffle(self, seq: MutableSequence) -> None:
        """In-place Fisher-Yates: for i = len-1 .. 1, swap i with below(i + 1)."""
        for i in range(len(seq) - 1, 0, -1):
            j = self.below(i + 1)
            seq[i], seq[j] = seq[j], seq[i]

    def sample(self, seq: Sequence[_T], k: int) -> list[_T]:
        """k distinct elements, by partial Fisher-Yates from the front."""
        if k < 0 or k > len(seq):
            raise ValueError(f"cannot sample {k} from {len(seq)} elements")
        pool = list(seq)
        for i in range(k):
            j = i + self.below(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]
