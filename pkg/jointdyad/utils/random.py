"""
Seeded random streams.

All randomness flows from one integer seed per command. Named
substreams are derived through ``numpy.random.SeedSequence`` spawn
keys, so a restart, fold or sample draws the same numbers no matter
which worker runs it or in what order.
"""

import zlib
from typing import Union

import numpy as np


StreamKey = Union[int, str]


def _key_to_int(key: StreamKey) -> int:
    if isinstance(key, str):
        return zlib.crc32(key.encode("utf-8"))
    if key < 0:
        raise ValueError(f"stream keys must be non-negative, got {key}")
    return int(key)


def seed_sequence(seed: int, *keys: StreamKey) -> np.random.SeedSequence:
    """SeedSequence for ``seed`` addressed by ``keys``."""
    return np.random.SeedSequence(
        entropy=abs(int(seed)),
        spawn_key=tuple(_key_to_int(k) for k in keys),
    )


def substream(seed: int, *keys: StreamKey) -> np.random.Generator:
    """
    Independent generator for the named substream.

    Args:
        seed: Root seed of the run
        *keys: Names or indices identifying the substream

    Returns:
        A fresh PCG64-backed generator
    """
    return np.random.Generator(np.random.PCG64(seed_sequence(seed, *keys)))


def derive_seed(rng: np.random.Generator) -> int:
    """Draw a root seed for nested substreams from an existing generator."""
    return int(rng.integers(0, 2**63 - 1))
