"""Deterministic random number streams.

Every randomized operation in the package takes either an integer seed or an
explicit ``numpy.random.Generator``.  Generators are built on the Philox
counter-based bit generator so that independent tasks (solver restarts,
experiment cells) can be given statistically independent, reproducible streams
via ``SeedSequence`` spawning.
"""
from __future__ import annotations

import numpy as np

SeedLike = "int | np.random.SeedSequence"


def make_rng(seed) -> np.random.Generator:
    """Generator seeded from an integer or SeedSequence."""
    return np.random.Generator(np.random.Philox(seed))


def spawn_seeds(seed, k: int) -> list[np.random.SeedSequence]:
    """k independent child seed sequences derived from one master seed."""
    if isinstance(seed, np.random.SeedSequence):
        return seed.spawn(k)
    return np.random.SeedSequence(seed).spawn(k)


def spawn_rngs(seed, k: int) -> list[np.random.Generator]:
    return [make_rng(s) for s in spawn_seeds(seed, k)]


def seed_to_int(seed_seq: np.random.SeedSequence) -> int:
    """Collapse a seed sequence to a plain 64-bit integer seed."""
    return int(seed_seq.generate_state(1, np.uint64)[0])
