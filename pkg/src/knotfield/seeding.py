"""Seed derivation helpers.

All randomness in the package flows through numpy Generators seeded via
SeedSequence so that replicas, coordinate streams, and sub-tasks draw
from provably disjoint streams.
"""

from __future__ import annotations

import numpy as np


def split_seed(seed: int, *indices: int) -> int:
    """Derive a child seed from a master seed and an index path.

    Same (seed, indices) always gives the same child; different index
    paths give streams that never collide in practice.
    """
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(i) for i in indices))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def rng_from(seed: int, *indices: int) -> np.random.Generator:
    """Generator seeded by ``split_seed(seed, *indices)``."""
    return np.random.default_rng(split_seed(seed, *indices))
