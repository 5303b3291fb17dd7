"""Deterministic random streams.

Every randomized routine in the package draws from a Philox generator keyed
by (seed, purpose). Philox is counter-based, so streams for distinct keys
are independent and a given key always reproduces the same draws no matter
how many other streams exist or in which order they are consumed. That is
what makes multi-threaded estimates bit-identical to single-threaded ones.
"""

from __future__ import annotations

import numpy as np

# spawn_key domains; keep stable, results depend on them
DOMAIN_SAMPLER = 0
DOMAIN_ENDPOINTS = 1


def substream(seed: int, *key: int) -> np.random.Generator:
    """Generator for the stream identified by (seed, *key)."""
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))
