import itertools
from collections import Counter
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from attrlearn.core import InvalidSize, ZeroVector, rng_stream
from attrlearn.sampling import sample_pair_set, sample_subset, sample_weighted_index

N_DRAWS = 10**6


class TestSubset:
    def test_full_set(self, rng):
        assert sorted(sample_subset(5, 5, rng)) == [0, 1, 2, 3, 4]

    def test_empty(self, rng):
        assert sample_subset(5, 0, rng).size == 0

    def test_invalid(self, rng):
        with pytest.raises(InvalidSize):
            sample_subset(3, 4, rng)

    def test_uniform_frequencies(self):
        rng = rng_stream(2024)
        counts = Counter(tuple(sorted(sample_subset(4, 2, rng))) for _ in range(N_DRAWS))
        assert len(counts) == 6
        for c in itertools.combinations(range(4), 2):
            assert abs(counts[c] / N_DRAWS - 1 / 6) < 0.005

    @settings(max_examples=200, deadline=None)
    @given(st.integers(1, 30), st.data())
    def test_distinct_and_in_range(self, n, data):
        size = data.draw(st.integers(0, n))
        s = sample_subset(n, size, np.random.default_rng(data.draw(st.integers(0, 2**32))))
        assert len(set(s.tolist())) == size
        assert all(0 <= i < n for i in s)

    def test_fixed_draw_count(self):
        # the stream position after a call depends only on (n, size)
        a, b = rng_stream(1), rng_stream(1)
        sample_subset(10, 3, a)
        b.random(3)
        assert a.random() == b.random()


class TestPairSet:
    def test_full(self, rng):
        pairs = {tuple(p) for p in sample_pair_set(2, 4, rng)}
        assert pairs == {(0, 0), (0, 1), (1, 0), (1, 1)}

    def test_single(self, rng):
        assert sample_pair_set(1, 1, rng).tolist() == [[0, 0]]

    def test_invalid(self, rng):
        with pytest.raises(InvalidSize):
            sample_pair_set(2, 5, rng)

    def test_uniform_frequencies(self):
        rng = rng_stream(99)
        counts = Counter(tuple(sample_pair_set(2, 1, rng)[0]) for _ in range(N_DRAWS))
        for pair in itertools.product(range(2), repeat=2):
            assert abs(counts[pair] / N_DRAWS - 0.25) < 0.005


class TestWeightedIndex:
    def test_single_support(self, rng):
        assert all(sample_weighted_index([0.0, 3.0, 0.0], rng) == 1 for _ in range(100))

    def test_zero_vector(self, rng):
        with pytest.raises(ZeroVector):
            sample_weighted_index([0.0, 0.0], rng)

    @pytest.mark.parametrize("w,expected", [([1.0, -1.0], [0.5, 0.5]), ([1.0, 3.0], [0.25, 0.75])])
    def test_frequencies(self, w, expected):
        draws = sample_weighted_index(w, rng_stream(5), size=N_DRAWS)
        freq = np.bincount(draws, minlength=2) / N_DRAWS
        np.testing.assert_allclose(freq, expected, atol=0.005)

    def test_scalar_draws_match_batch(self):
        w = [0.2, -0.5, 0.3]
        a = [sample_weighted_index(w, rng_stream(8, "s", i)) for i in range(50)]
        b = [int(sample_weighted_index(w, rng_stream(8, "s", i), size=1)[0]) for i in range(50)]
        assert a == b

    def test_sign_blind(self):
        w = np.array([0.3, -0.2, 0.0, -0.5])
        a = sample_weighted_index(w, rng_stream(3), size=1000)
        b = sample_weighted_index(np.abs(w), rng_stream(3), size=1000)
        assert np.array_equal(a, b)
        assert not np.any(a == 2)


@pytest.mark.parametrize("n", range(1, 7))
def test_subset_mean_matches_single_draw(n):
    """Averaging f over a uniform size-b subset has the same expectation as one uniform draw."""
    f = np.random.default_rng(n).normal(size=n)
    for b in range(1, n + 1):
        subsets = list(itertools.combinations(range(n), b))
        assert len(subsets) == comb(n, b)
        avg = sum(np.mean(f[list(c)]) for c in subsets) / len(subsets)
        assert abs(avg - f.mean()) < 1e-12
