"""Brute-force oracles and the verification suites."""

from math import inf

import pytest

from evojump import (
    BitString,
    ProblemSpec,
    RngStream,
    brute_crowding,
    brute_front,
    brute_rank,
    pareto_front,
    run_verification,
)
from evojump.oracle import verify_fronts, verify_sorting_and_crowding


def test_brute_rank_four_points():
    assert brute_rank([(1, 3), (2, 2), (3, 1), (1, 1)]) == [1, 1, 1, 2]


def test_brute_rank_singleton():
    assert brute_rank([(7, 7)]) == [1]


def test_brute_rank_chain_of_five():
    chain = [(i, i) for i in range(1, 6)]
    assert brute_rank(chain) == [5, 4, 3, 2, 1]


def test_brute_crowding_three_points():
    assert brute_crowding([(1, 4), (2, 3), (4, 1)]) == [inf, 2.0, inf]


def test_brute_crowding_pair():
    assert brute_crowding([(1, 2), (2, 1)]) == [inf, inf]


def test_brute_crowding_four_collinear():
    crowd = brute_crowding([(1, 4), (2, 3), (3, 2), (4, 1)])
    assert crowd[1] == pytest.approx(2 * (2 / 3))
    assert crowd[2] == pytest.approx(2 * (2 / 3))


def test_brute_front_matches_formula_n8():
    spec = ProblemSpec("ojzj", 8, 2)
    front = brute_front(spec)
    assert front == pareto_front(8, 2)
    assert len(front) == 7


def test_brute_front_sizes():
    assert len(brute_front(ProblemSpec("ojzj", 10, 2))) == 9
    assert len(brute_front(ProblemSpec("ojzj", 12, 3))) == 9


def test_brute_front_rejects_large_n():
    # Construction below bypasses ProblemSpec's k-range only; n=17 is valid
    # for the spec but too large for exhaustive enumeration.
    with pytest.raises(ValueError):
        brute_front(ProblemSpec("ojzj", 17, 2))


def test_sorting_and_crowding_suite_clean():
    report = verify_sorting_and_crowding(cases=300, seed=11)
    assert report.cases_run == 300
    assert report.passed


def test_front_suite_clean():
    report = verify_fronts(max_n=12)
    assert report.passed
    assert report.cases_run >= 5


def test_run_verification_merges_reports():
    report = run_verification(cases=50, max_n=10)
    assert report.passed
    assert report.cases_run > 50


def test_report_records_mismatches():
    from evojump.oracle import OracleReport

    report = OracleReport()
    report.cases_run = 1
    report.record("case x", [1], [2])
    assert not report.passed
    merged = report.merge(OracleReport(cases_run=2))
    assert merged.cases_run == 3
    assert len(merged.mismatches) == 1
