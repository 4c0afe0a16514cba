"""Seeded, splittable random streams.

A stream is identified by a base seed and a key path; every distinct path
gets its own Mersenne Twister seeded from a SHA-256 digest of the pair, so
streams are reproducible and do not depend on draw order elsewhere.
"""
from __future__ import annotations

import hashlib
import random
from typing import Sequence, Tuple


class RandomStream:
    __slots__ = ("seed", "key", "_rng")

    def __init__(self, seed: int, key: Tuple[int, ...] = ()) -> None:
        self.seed = int(seed)
        self.key = tuple(int(k) for k in key)
        digest = hashlib.sha256(repr((self.seed, self.key)).encode()).digest()
        self._rng = random.Random(int.from_bytes(digest, "big"))

    @property
    def stream_index(self) -> int:
        return self.key[-1] if self.key else 0

    def spawn(self, index: int) -> "RandomStream":
        """Independent child stream; depends only on (seed, key, index)."""
        return RandomStream(self.seed, self.key + (index,))

    def random(self) -> float:
        return self._rng.random()

    def randint(self, lo: int, hi: int) -> int:
        return self._rng.randint(lo, hi)

    def shuffle(self, items: list) -> None:
        self._rng.shuffle(items)

    def sample(self, population: Sequence, k: int) -> list:
        return self._rng.sample(population, k)

    def __repr__(self) -> str:
        return f"RandomStream(seed={self.seed}, key={self.key})"
