"""Jump / OneJumpZeroJump values, Pareto-front utilities, coverage."""

import pytest

from evojump import (
    BitString,
    Individual,
    ProblemSpec,
    RngStream,
    classify_coverage,
    dominates,
    extremal_vectors,
    inner_pareto_front,
    jump_value,
    ojzj_value,
    pareto_front,
    sample_uniform,
)


def with_ones(n, ones):
    return BitString(n, (1 << ones) - 1)


def test_jump_plateau_branch():
    assert jump_value(with_ones(10, 8), 2) == 10


def test_jump_optimum_branch():
    assert jump_value(BitString.ones(10), 2) == 12


def test_jump_valley_branch():
    assert jump_value(with_ones(10, 9), 2) == 1


def test_jump_maximum_unique_exhaustive():
    for n in (8, 10, 12):
        for k in range(2, n // 4 + 1):
            values = [(jump_value(BitString(n, v), k), v) for v in range(1 << n)]
            best = max(values)
            assert best == (n + k, (1 << n) - 1)
            assert sum(1 for f, _ in values if f == n + k) == 1


def test_ojzj_inner_point():
    assert ojzj_value(with_ones(10, 5), 2) == (7, 7)


def test_ojzj_all_zeros():
    assert ojzj_value(BitString.zeros(10), 2) == (2, 12)


def test_ojzj_ones_valley():
    # |x|_1 = 9 is in the f1 valley; |x|_0 = 1 <= n-k keeps f2 on its plateau.
    assert ojzj_value(with_ones(10, 9), 2) == (1, 3)


def test_ojzj_inner_sum_invariant():
    n, k = 12, 3
    for ones in range(k, n - k + 1):
        f1, f2 = ojzj_value(with_ones(n, ones), k)
        assert f1 + f2 == n + 2 * k


def test_pareto_front_size_n50_k2():
    assert len(pareto_front(50, 2)) == 49


def test_pareto_front_contains_extremal_points():
    front = pareto_front(10, 2)
    assert (2, 12) in front
    assert (12, 2) in front
    assert extremal_vectors(10, 2) == ((2, 12), (12, 2))


def test_pareto_front_is_nondominated_image_exhaustive():
    for n, k in ((8, 2), (10, 2), (12, 2), (12, 3)):
        image = {ojzj_value(BitString(n, v), k) for v in range(1 << n)}
        nondominated = {
            vec for vec in image if not any(dominates(other, vec) for other in image)
        }
        assert pareto_front(n, k) == nondominated


def test_pareto_set_members_map_into_front():
    n, k = 12, 3
    front = pareto_front(n, k)
    rng = RngStream(3)
    for v in range(1 << n):
        x = BitString(n, v)
        ones = x.count_ones()
        if k <= ones <= n - k or ones in (0, n):
            assert ojzj_value(x, k) in front


def test_inner_front_is_front_minus_extremals():
    n, k = 20, 4
    inner = inner_pareto_front(n, k)
    front = pareto_front(n, k)
    assert inner == front - set(extremal_vectors(n, k))
    assert len(inner) == n - 2 * k + 1


def test_problem_spec_validates_k_range():
    ProblemSpec("ojzj", 8, 2)
    with pytest.raises(ValueError):
        ProblemSpec("ojzj", 10, 1)
    with pytest.raises(ValueError):
        ProblemSpec("ojzj", 10, 3)  # floor(10/4) = 2
    with pytest.raises(ValueError):
        ProblemSpec("onemax", 10, 2)


def test_spec_evaluator_matches_functions():
    rng = RngStream(17)
    jump = ProblemSpec("jump", 12, 3)
    ojzj = ProblemSpec("ojzj", 12, 3)
    for _ in range(100):
        x = sample_uniform(12, rng)
        assert jump.evaluate(x) == (jump_value(x, 3),)
        assert ojzj.evaluate(x) == ojzj_value(x, 3)


def evaluated(spec, x):
    return Individual(x, spec.evaluate(x))


def test_coverage_inner_only():
    n, k = 10, 2
    spec = ProblemSpec("ojzj", n, k)
    population = [evaluated(spec, with_ones(n, ones)) for ones in range(k, n - k + 1)]
    cov = classify_coverage(population, spec)
    assert cov.inner_covered
    assert cov.extremal_found == "none"
    assert not cov.full


def test_coverage_empty_population():
    cov = classify_coverage([], ProblemSpec("ojzj", 10, 2))
    assert cov.covered == frozenset()
    assert not cov.inner_covered


def test_coverage_full_enumeration():
    n, k = 8, 2
    spec = ProblemSpec("ojzj", n, k)
    population = [evaluated(spec, BitString(n, v)) for v in range(1 << n)]
    cov = classify_coverage(population, spec)
    assert cov.full
    assert len(cov.covered) == 7  # n - 2k + 3
    assert cov.extremal_found == "both"


def test_coverage_one_extremal():
    n, k = 10, 2
    spec = ProblemSpec("ojzj", n, k)
    population = [evaluated(spec, BitString.ones(n))]
    cov = classify_coverage(population, spec)
    assert cov.extremal_found == "one"


def test_coverage_requires_evaluated_individuals():
    spec = ProblemSpec("ojzj", 10, 2)
    with pytest.raises(ValueError):
        classify_coverage([Individual(BitString.zeros(10))], spec)
