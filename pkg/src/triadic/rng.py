"""Seeded random streams.

All sampling goes through numpy's PCG64 bit generator.  Independent streams
for parallel workers or repeated runs come from :meth:`PCG64.jumped`, which
advances the state by ``i * 2**127`` steps, so streams never overlap.
"""

import os

import numpy as np

SEED_ENV = "TRIAD_SEED"


def make_rng(seed=None, stream: int = 0) -> np.random.Generator:
    """Return a ``Generator`` for ``seed``; pass a ``Generator`` through unchanged.

    ``seed=None`` falls back to ``$TRIAD_SEED`` and then to OS entropy.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None:
        env = os.environ.get(SEED_ENV)
        seed = int(env) if env not in (None, "") else None
    bitgen = np.random.PCG64(seed)
    if stream:
        bitgen = bitgen.jumped(stream)
    return np.random.Generator(bitgen)


def spawn(seed, count: int) -> list:
    """``count`` disjoint generators derived from one seed."""
    return [make_rng(seed, stream=i + 1) for i in range(count)]
