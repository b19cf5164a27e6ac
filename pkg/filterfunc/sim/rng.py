"""
Reproducible per-replication random streams.

Replication r of an experiment seeded with ``seed`` draws from numpy's PCG64
bit generator initialised by ``SeedSequence(seed, spawn_key=(r,))``. This is
the same derivation ``SeedSequence.spawn`` uses for child r, so a stream
depends only on (seed, r) and never on which worker runs it or in what order.
"""

import os

import numpy as np
from numpy.random import PCG64, SeedSequence

ALGORITHM = "numpy PCG64, stream r seeded by SeedSequence(seed, spawn_key=(r,))"

MAX_SEED = 2 ** 64 - 1


def create_seed(seed=None) -> int:
    """Return ``seed`` unchanged, or a fresh 64-bit seed from os.urandom."""
    if seed is None:
        seed = int.from_bytes(os.urandom(8), byteorder="big")
    return int(seed)


def replication_generator(seed: int, replication: int) -> np.random.Generator:
    """Generator for one replication."""
    return np.random.Generator(PCG64(SeedSequence(seed, spawn_key=(replication,))))
