"""Seeded random streams.

Every random draw in the package goes through a Philox4x64 counter-based
generator (``numpy.random.Philox``) keyed from a ``numpy.random.SeedSequence``.
Both algorithms are published and platform independent, so a given seed
reproduces the same draws everywhere.
"""
import numpy as np

SEED_MAX = 2**64 - 1


def parse_seed(value) -> int:
    """Accept an int or a decimal string and return a 64-bit unsigned seed."""
    if isinstance(value, str):
        value = value.strip()
        if not value.isdigit():
            raise ValueError(f"seed must be a non-negative decimal integer, got {value!r}")
        value = int(value)
    value = int(value)
    if not 0 <= value <= SEED_MAX:
        raise ValueError(f"seed {value} outside the 64-bit unsigned range")
    return value


def make_rng(seed, *key: int) -> np.random.Generator:
    """Generator for ``seed``; extra integers select an independent child stream."""
    ss = np.random.SeedSequence(parse_seed(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))


def derive_seed(seed, *key: int) -> int:
    """64-bit seed for the child stream ``key`` of ``seed``."""
    ss = np.random.SeedSequence(parse_seed(seed), spawn_key=tuple(int(k) for k in key))
    return int(ss.generate_state(1, dtype=np.uint64)[0])
