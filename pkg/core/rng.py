# core/rng.py
"""Deterministic random streams.

All randomness goes through numpy's PCG64 bit generator seeded via SeedSequence,
which numpy documents as stable across platforms and releases. Global or
platform-default generators are never used.
"""

from typing import Tuple

import numpy as np

_SEED_MASK = (1 << 64) - 1


def _entropy(seed: int) -> int:
    # 64-bit two's complement view so negative seeds are accepted
    return int(seed) & _SEED_MASK


def seeded_rng(seed: int) -> np.random.Generator:
    """PCG64 stream; identical seeds give identical draws."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(_entropy(seed))))


def stream_rng(seed: int, key: Tuple[int, ...]) -> np.random.Generator:
    """Independent child stream of `seed`, selected by `key` (e.g. (group, index))."""
    ss = np.random.SeedSequence(_entropy(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.PCG64(ss))


def derive_seed(master_seed: int, run_index: int) -> int:
    """Per-run seed for Monte-Carlo batches. Run 0 keeps the master seed."""
    if run_index == 0:
        return _entropy(master_seed)
    ss = np.random.SeedSequence([_entropy(master_seed), int(run_index)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])
