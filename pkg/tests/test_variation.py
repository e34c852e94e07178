"""Crossover and mutation operators."""

import pytest

from evojump import (
    BitString,
    RngStream,
    bitwise_mutation,
    count_ones,
    hamming,
    sample_uniform,
    uniform_crossover_one,
    uniform_crossover_two,
)


def test_crossover_two_identical_parents():
    rng = RngStream(1)
    x = sample_uniform(32, rng)
    c1, c2 = uniform_crossover_two(x, x, rng)
    assert c1 == x and c2 == x


def test_crossover_two_complementarity_law():
    rng = RngStream(2)
    for _ in range(2000):
        n = 1 + rng.randrange(80)
        x = sample_uniform(n, rng)
        y = sample_uniform(n, rng)
        c1, c2 = uniform_crossover_two(x, y, rng)
        assert c1.value ^ c2.value == x.value ^ y.value


def test_crossover_two_positionwise_multiset():
    rng = RngStream(3)
    x = sample_uniform(24, rng)
    y = sample_uniform(24, rng)
    c1, c2 = uniform_crossover_two(x, y, rng)
    for i in range(24):
        assert sorted((c1[i], c2[i])) == sorted((x[i], y[i]))


def test_crossover_two_is_fair():
    # Complementary parents: child one-counts are Binomial(n, 1/2).
    rng = RngStream(4)
    n, trials = 64, 10**4
    x, y = BitString.ones(n), BitString.zeros(n)
    total = sum(count_ones(uniform_crossover_two(x, y, rng)[0]) for _ in range(trials))
    mean = total / trials
    se = (n / 4) ** 0.5 / trials**0.5
    assert abs(mean - n / 2) <= 3 * se


def test_crossover_length_mismatch_rejected():
    rng = RngStream(5)
    with pytest.raises(ValueError):
        uniform_crossover_two(BitString.ones(4), BitString.ones(5), rng)
    with pytest.raises(ValueError):
        uniform_crossover_one(BitString.ones(4), BitString.ones(5), rng)


def test_crossover_one_identical_parents():
    rng = RngStream(6)
    x = sample_uniform(20, rng)
    assert uniform_crossover_one(x, x, rng) == x


def test_crossover_one_bits_come_from_parents():
    rng = RngStream(7)
    for _ in range(200):
        x = sample_uniform(16, rng)
        y = sample_uniform(16, rng)
        c = uniform_crossover_one(x, y, rng)
        assert all(c[i] in (x[i], y[i]) for i in range(16))


def test_crossover_one_is_fair():
    rng = RngStream(8)
    n, trials = 64, 10**4
    x, y = BitString.ones(n), BitString.zeros(n)
    total = sum(count_ones(uniform_crossover_one(x, y, rng)) for _ in range(trials))
    mean = total / trials
    se = (n / 4) ** 0.5 / trials**0.5
    assert abs(mean - n / 2) <= 3 * se


def test_mutation_rate_zero_is_identity():
    rng = RngStream(9)
    x = sample_uniform(40, rng)
    assert bitwise_mutation(x, 0.0, rng) == x


def test_mutation_rate_one_is_complement():
    rng = RngStream(10)
    x = sample_uniform(40, rng)
    assert bitwise_mutation(x, 1.0, rng) == BitString(40, x.value ^ ((1 << 40) - 1))


def test_mutation_mean_flips_at_rate_one_over_n():
    rng = RngStream(11)
    n, trials = 100, 10**5
    x = BitString.zeros(n)
    flips = sum(count_ones(bitwise_mutation(x, 1.0 / n, rng)) for _ in range(trials))
    assert 0.9 <= flips / trials <= 1.1


def test_mutation_rejects_bad_rate():
    rng = RngStream(12)
    with pytest.raises(ValueError):
        bitwise_mutation(BitString.ones(4), 1.5, rng)
    with pytest.raises(ValueError):
        bitwise_mutation(BitString.ones(4), -0.1, rng)


def test_mutation_flip_count_distribution_matches_binomial():
    # Two-sided check on P(no flip) at rate 1/n: (1-1/n)^n ~ 0.366 for n=100.
    rng = RngStream(13)
    n, trials = 100, 2 * 10**4
    x = BitString.zeros(n)
    none = sum(bitwise_mutation(x, 1.0 / n, rng) == x for _ in range(trials))
    expected = (1 - 1 / n) ** n
    assert abs(none / trials - expected) < 0.02


def test_mutation_does_not_modify_input():
    rng = RngStream(14)
    x = sample_uniform(30, rng)
    value_before = x.value
    for _ in range(50):
        bitwise_mutation(x, 0.5, rng)
    assert x.value == value_before
