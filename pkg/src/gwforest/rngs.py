"""Seeded stream derivation for reproducible Monte Carlo.

Streams are Philox counter-based generators keyed through SeedSequence spawn
keys, so stream i of a given seed is the same no matter how many workers run
or in what order results arrive.
"""

from __future__ import annotations

import numpy as np


def child_generator(seed: int, index: int) -> np.random.Generator:
    """Independent generator for sub-stream ``index`` of ``seed``."""
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence(entropy=seed, spawn_key=(index,)))
    )
