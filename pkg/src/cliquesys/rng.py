"""Seeded random streams.

All randomness goes through numpy's PCG64 bit generator.  A user seed
(an unsigned 64-bit integer) is combined with a fixed per-component
offset through ``SeedSequence(seed, spawn_key=(offset,))`` so that each
component draws from its own stream and results do not depend on the
order in which components run.
"""

from __future__ import annotations

import numpy as np

from .errors import BadParams

STREAMS = {
    "process": 1,
    "restriction": 2,
    "induced": 3,
    "coloring": 4,
    "independent": 5,
    "caps": 6,
    "mixing": 7,
    "split_a": 8,
    "split_b": 9,
}

SEED_MAX = 2**64 - 1


def check_seed(seed: int) -> int:
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or not 0 <= seed <= SEED_MAX:
        raise BadParams(f"seed must be an integer in [0, 2^64), got {seed!r}")
    return int(seed)


def make_rng(seed: int, stream: str) -> np.random.Generator:
    seed = check_seed(seed)
    ss = np.random.SeedSequence(seed, spawn_key=(STREAMS[stream],))
    return np.random.Generator(np.random.PCG64(ss))
