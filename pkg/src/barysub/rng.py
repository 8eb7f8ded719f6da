"""Seeded die rolls.

Every run draws from numpy's PCG64 bit generator seeded with a single 64-bit
integer.  Rolls come from ``Generator.integers(1, 7)``, which uses Lemire's
unbiased bounded-integer method; the resulting sequence does not depend on
how the draws are chunked.  Independent per-run seeds for multi-seed
statistics are derived with ``SeedSequence(seed, spawn_key=(k,))``.
"""

from __future__ import annotations

import numpy as np

SEED_MAX = 2**64 - 1


def check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed <= SEED_MAX:
        raise ValueError(f"seed must be in [0, 2**64), got {seed}")
    return seed


def derive_seed(seed: int, k: int) -> int:
    """Seed of the ``k``-th worker run spawned from ``seed``."""
    ss = np.random.SeedSequence(check_seed(seed), spawn_key=(k,))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def derive_seeds(seed: int, count: int) -> list[int]:
    return [derive_seed(seed, k) for k in range(count)]


class DieStream:
    """Fair six-sided die driven by PCG64; ``position`` counts rolls consumed."""

    def __init__(self, seed: int):
        self.seed = check_seed(seed)
        self._gen = np.random.Generator(np.random.PCG64(self.seed))
        self.position = 0

    def rolls(self, n: int) -> np.ndarray:
        if n < 0:
            raise ValueError("n must be nonnegative")
        out = self._gen.integers(1, 7, size=n, dtype=np.int64)
        self.position += n
        return out

    def roll(self) -> int:
        return int(self.rolls(1)[0])

    def uniform(self, low: float = 0.0, high: float = 1.0) -> float:
        return float(self._gen.uniform(low, high))
