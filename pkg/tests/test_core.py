"""Bit strings, Hamming distance, and the seeded RNG contract."""

import pytest

from evojump import BitString, RngStream, count_ones, count_zeros, derive_seed, hamming, sample_uniform


def test_count_ones_all_ones():
    assert count_ones(BitString.ones(10)) == 10


def test_count_ones_all_zeros():
    assert count_ones(BitString.zeros(10)) == 0


def test_count_ones_mixed():
    assert count_ones(BitString.from01("1010")) == 2


def test_counts_sum_to_length():
    x = BitString.from01("1101001")
    assert count_ones(x) + count_zeros(x) == len(x)


def test_bitstring_roundtrip_and_indexing():
    x = BitString.from01("10110")
    assert x.to01() == "10110"
    assert [x[i] for i in range(5)] == [1, 0, 1, 1, 0]
    assert list(x) == [1, 0, 1, 1, 0]


def test_bitstring_rejects_empty_and_bad_values():
    with pytest.raises(ValueError):
        BitString(0, 0)
    with pytest.raises(ValueError):
        BitString(3, 8)
    with pytest.raises(ValueError):
        BitString.from_bits([0, 2, 1])


def test_hamming_identity():
    x = BitString.from01("1100")
    assert hamming(x, x) == 0


def test_hamming_complement():
    assert hamming(BitString.ones(4), BitString.zeros(4)) == 4


def test_hamming_mixed():
    assert hamming(BitString.from01("1010"), BitString.from01("1001")) == 2


def test_hamming_length_mismatch_rejected():
    with pytest.raises(ValueError):
        hamming(BitString.ones(4), BitString.ones(5))


def test_hamming_equals_xor_popcount():
    rng = RngStream(99)
    for _ in range(200):
        n = 1 + rng.randrange(64)
        x = sample_uniform(n, rng)
        y = sample_uniform(n, rng)
        xor = BitString(n, x.value ^ y.value)
        assert hamming(x, y) == count_ones(xor)
        assert hamming(x, y) == hamming(y, x)


def test_sample_uniform_rejects_zero_length():
    with pytest.raises(ValueError):
        sample_uniform(0, RngStream(1))


def test_sample_uniform_reproducible():
    a = sample_uniform(8, RngStream(12345))
    b = sample_uniform(8, RngStream(12345))
    assert a == b


def test_sample_uniform_is_fair():
    # 10^6 one-bit samples; the one-fraction sits within a generous CI.
    rng = RngStream(2024)
    ones = sum(sample_uniform(1, rng).value for _ in range(10**6))
    assert 0.497 <= ones / 10**6 <= 0.503


def test_equal_seeds_equal_draws():
    a = RngStream(777)
    b = RngStream(777)
    assert [a.random() for _ in range(10**4)] == [b.random() for _ in range(10**4)]


def test_derived_streams_diverge():
    base = RngStream(5)
    diverged = 0
    for i in range(10**3):
        s = base.derive(i)
        t = base.derive(i + 1)
        if any(s.random() != t.random() for _ in range(16)):
            diverged += 1
    assert diverged == 10**3


def test_derive_is_pure_function_of_seed_and_index():
    a = RngStream(42).derive(3)
    RngStream(42).random()  # consuming the parent does not affect derivation
    parent = RngStream(42)
    parent.random()
    b = parent.derive(3)
    assert [a.random() for _ in range(100)] == [b.random() for _ in range(100)]


def test_derive_seed_deterministic_and_distinct():
    assert derive_seed(1, 2, 3) == derive_seed(1, 2, 3)
    assert derive_seed(1, 2, 3) != derive_seed(1, 3, 2)
    assert 0 <= derive_seed(1, 2, 3) < 2**64


def test_rng_seed_range_validated():
    with pytest.raises(ValueError):
        RngStream(-1)
    with pytest.raises(ValueError):
        RngStream(2**64)


def test_binomial_edge_rates():
    rng = RngStream(8)
    assert all(rng.binomial(20, 0.0) == 0 for _ in range(50))
    assert all(rng.binomial(20, 1.0) == 20 for _ in range(50))


def test_binomial_mean_matches():
    rng = RngStream(9)
    trials = 10**5
    total = sum(rng.binomial(100, 0.01) for _ in range(trials))
    assert 0.9 <= total / trials <= 1.1


def test_distinct_indices_are_distinct_and_in_range():
    rng = RngStream(10)
    for _ in range(200):
        n = 2 + rng.randrange(40)
        m = rng.randrange(n + 1)
        picks = rng.distinct_indices(n, m)
        assert len(picks) == m
        assert len(set(picks)) == m
        assert all(0 <= p < n for p in picks)


def test_shuffle_is_a_permutation():
    rng = RngStream(11)
    seq = list(range(25))
    rng.shuffle(seq)
    assert sorted(seq) == list(range(25))
