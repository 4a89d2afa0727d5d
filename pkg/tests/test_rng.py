# tests/test_rng.py

import numpy as np

from core.rng import derive_seed, seeded_rng, stream_rng


def test_same_seed_same_stream():
    a = seeded_rng(424242).standard_normal(1000)
    b = seeded_rng(424242).standard_normal(1000)
    assert np.array_equal(a, b)


def test_different_seeds_differ_early():
    a = seeded_rng(1).uniform(size=10)
    b = seeded_rng(2).uniform(size=10)
    assert not np.array_equal(a, b)


def test_standard_normal_moments():
    draws = seeded_rng(42).standard_normal(100_000)
    assert abs(draws.mean()) < 0.02
    assert 0.98 <= draws.std() <= 1.02


def test_negative_seed_is_accepted():
    assert np.array_equal(seeded_rng(-1).uniform(size=5), seeded_rng(2**64 - 1).uniform(size=5))


def test_child_streams_are_independent_and_reproducible():
    a = stream_rng(5, (0, 0)).standard_normal(20)
    b = stream_rng(5, (0, 1)).standard_normal(20)
    assert not np.array_equal(a, b)
    assert np.array_equal(a, stream_rng(5, (0, 0)).standard_normal(20))


def test_derive_seed():
    assert derive_seed(123, 0) == 123
    seeds = [derive_seed(123, r) for r in range(1, 20)]
    assert len(set(seeds)) == len(seeds)
    assert seeds == [derive_seed(123, r) for r in range(1, 20)]
    assert all(0 <= s < 2**64 for s in seeds)
