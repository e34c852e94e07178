"""Brute-force reference implementations for validating the NSGA-II machinery.

These transcribe the defining statements literally and share only the
bit-string and dominance primitives with the main path: ranks are obtained by
repeatedly peeling the non-dominated set with pairwise dominance tests, the
Pareto front by enumerating all 2^n strings. Slow on purpose; run them on
small instances before trusting large experiments.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import inf

from .benchmarks import ProblemSpec, ojzj_value, pareto_front
from .core import BitString, Individual, RngStream
from .nsga2 import crowding_assign, dominates, non_dominated_sort

__all__ = [
    "OracleReport",
    "brute_rank",
    "brute_crowding",
    "brute_front",
    "verify_sorting_and_crowding",
    "verify_fronts",
    "run_verification",
]


@dataclass
class OracleReport:
    """Outcome of an oracle comparison suite."""

    cases_run: int = 0
    mismatches: list[tuple[str, str, str]] = field(default_factory=list)  # (case, expected, actual)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def merge(self, other: "OracleReport") -> "OracleReport":
        return OracleReport(
            cases_run=self.cases_run + other.cases_run,
            mismatches=self.mismatches + other.mismatches,
        )

    def record(self, case: str, expected, actual) -> None:
        self.mismatches.append((case, repr(expected), repr(actual)))


def _vectors(population) -> list[tuple]:
    out = []
    for member in population:
        obj = getattr(member, "objectives", member)
        if obj is None:
            raise ValueError("population contains an unevaluated individual")
        out.append(tuple(obj))
    return out


def brute_rank(population) -> list[int]:
    """Ranks by literal peeling: rank r+1 members are those dominated only by
    members of rank <= r, found by removing each non-dominated layer in turn."""
    vectors = _vectors(population)
    ranks = [0] * len(vectors)
    remaining = list(range(len(vectors)))
    rank = 0
    while remaining:
        rank += 1
        layer = [
            i
            for i in remaining
            if not any(dominates(vectors[j], vectors[i]) for j in remaining if j != i)
        ]
        for i in layer:
            ranks[i] = rank
        remaining = [i for i in remaining if ranks[i] == 0]
    return ranks


def brute_crowding(front, tie_orders=None) -> list[float]:
    """Straight-from-the-formula crowding distances for one front.

    Per objective, members are sorted ascending with ties resolved by the
    given per-objective tie order (member index by default, matching the main
    implementation's default convention); the first and last of the sorted
    list get infinity, everyone else the gap between their two neighbors
    normalized by max - min.
    """
    vectors = _vectors(front)
    m = len(vectors)
    if m == 0:
        return []
    totals = [0.0] * m
    for j in range(len(vectors[0])):
        ties = list(range(m)) if tie_orders is None else tie_orders[j]
        order = sorted(range(m), key=lambda i: (vectors[i][j], ties[i]))
        low = vectors[order[0]][j]
        high = vectors[order[-1]][j]
        for pos, i in enumerate(order):
            if pos == 0 or pos == m - 1:
                totals[i] = inf
            elif high != low:
                left = vectors[order[pos - 1]][j]
                right = vectors[order[pos + 1]][j]
                totals[i] += (right - left) / (high - low)
    return totals


def brute_front(spec: ProblemSpec) -> frozenset[tuple[int, int]]:
    """Pareto front by exhaustion: image of all 2^n strings, non-dominated only."""
    if spec.n > 16:
        raise ValueError(f"exhaustive enumeration is limited to n <= 16, got n={spec.n}")
    image = {ojzj_value(BitString(spec.n, v), spec.k) for v in range(1 << spec.n)}
    return frozenset(
        vec for vec in image if not any(dominates(other, vec) for other in image)
    )


def _random_population(rng: RngStream, case: int) -> list[Individual]:
    """Random test population: OJZJ-evaluated on even cases, arbitrary small
    integer vectors (duplicates likely) on odd ones."""
    size = 1 + rng.randrange(24)
    if case % 2 == 0:
        spec = ProblemSpec("ojzj", 8, 2)
        evaluate = spec.evaluator()
        out = []
        for _ in range(size):
            g = BitString(8, rng.bits(8))
            out.append(Individual(g, evaluate(g)))
        return out
    genome = BitString.zeros(4)  # carrier only; objectives are synthetic
    return [
        Individual(genome, (rng.randrange(9), rng.randrange(9))) for _ in range(size)
    ]


def verify_sorting_and_crowding(cases: int = 1000, seed: int = 20230211) -> OracleReport:
    """Compare non_dominated_sort / crowding_assign with the brute oracles."""
    rng = RngStream(seed)
    report = OracleReport()
    for case in range(cases):
        population = _random_population(rng, case)
        report.cases_run += 1
        expected = brute_rank(population)
        actual = non_dominated_sort(population)
        if actual != expected:
            report.record(f"ranks case {case} ({len(population)} members)", expected, actual)
            continue
        fronts: dict[int, list[int]] = {}
        for i, r in enumerate(expected):
            fronts.setdefault(r, []).append(i)
        for r, indices in sorted(fronts.items()):
            front = [population[i] for i in indices]
            want = brute_crowding(front)
            got = crowding_assign(front)
            if not _crowding_close(want, got):
                report.record(f"crowding case {case} rank {r}", want, got)
                continue
            # The run path orders ties by random permutations; check those too.
            arity = len(_vectors(front[:1])[0])
            orders = []
            for _ in range(arity):
                perm = list(range(len(front)))
                rng.shuffle(perm)
                orders.append(perm)
            want = brute_crowding(front, orders)
            got = crowding_assign(front, orders)
            if not _crowding_close(want, got):
                report.record(f"crowding case {case} rank {r} (shuffled ties)", want, got)
    return report


def _crowding_close(a: list[float], b: list[float], tol: float = 1e-12) -> bool:
    if len(a) != len(b):
        return False
    for x, y in zip(a, b):
        if x == inf or y == inf:
            if x != y:
                return False
        elif abs(x - y) > tol:
            return False
    return True


def verify_fronts(min_n: int = 8, max_n: int = 14) -> OracleReport:
    """Compare pareto_front with exhaustive enumeration for every admissible k."""
    report = OracleReport()
    for n in range(min_n, max_n + 1):
        for k in range(2, n // 4 + 1):
            report.cases_run += 1
            spec = ProblemSpec("ojzj", n, k)
            expected = brute_front(spec)
            actual = pareto_front(n, k)
            if actual != expected:
                report.record(f"front n={n} k={k}", sorted(expected), sorted(actual))
            elif len(actual) != n - 2 * k + 3:
                report.record(f"front size n={n} k={k}", n - 2 * k + 3, len(actual))
    return report


def run_verification(cases: int = 1000, max_n: int = 14, seed: int = 20230211) -> OracleReport:
    """The full oracle suite backing the CLI ``verify`` subcommand."""
    return verify_sorting_and_crowding(cases=cases, seed=seed).merge(
        verify_fronts(max_n=max_n)
    )
