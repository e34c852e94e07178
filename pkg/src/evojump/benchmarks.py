"""Jump and OneJumpZeroJump fitness functions plus Pareto-front utilities.

Jump places a fitness valley of width k just below the all-ones string: strings
with more than n-k (but not all) one-bits score worse than the plateau at n-k,
so the optimum can only be reached by flipping k bits at once or by a lucky
crossover. OneJumpZeroJump pairs that objective with its zero/one mirror image,
giving a bi-objective problem whose Pareto front has exactly n - 2k + 3 points:
an inner segment plus the two extremal points reached only across a valley.

Objective values are exact integers throughout, so dominance tests never
involve tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .core import BitString, Individual

__all__ = [
    "ProblemSpec",
    "FrontCoverage",
    "jump_value",
    "ojzj_value",
    "pareto_front",
    "inner_pareto_front",
    "extremal_vectors",
    "classify_coverage",
    "coverage_from_vectors",
]

KINDS = ("jump", "ojzj")


@dataclass(frozen=True)
class ProblemSpec:
    """A benchmark instance: function family, string length n, jump size k."""

    kind: str
    n: int
    k: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown problem kind {self.kind!r}, expected one of {KINDS}")
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if not 2 <= self.k <= self.n // 4:
            raise ValueError(
                f"jump size k={self.k} outside the admissible range [2, n/4] for n={self.n}"
            )

    @property
    def arity(self) -> int:
        return 1 if self.kind == "jump" else 2

    def evaluate(self, genome: BitString) -> tuple[int, ...]:
        return self.evaluator()(genome)

    def evaluator(self) -> Callable[[BitString], tuple[int, ...]]:
        """Evaluation closure with kind/n/k dispatch hoisted out of hot loops."""
        return _make_evaluator(self.kind, self.n, self.k)


@lru_cache(maxsize=None)
def _make_evaluator(kind: str, n: int, k: int) -> Callable[[BitString], tuple[int, ...]]:
    if kind == "jump":

        def evaluate(genome: BitString) -> tuple[int]:
            ones = genome.value.bit_count()
            if ones <= n - k or ones == n:
                return (k + ones,)
            return (n - ones,)

    else:

        def evaluate(genome: BitString) -> tuple[int, int]:
            ones = genome.value.bit_count()
            if ones <= n - k or ones == n:
                f1 = k + ones
            else:
                f1 = n - ones
            zeros = n - ones
            if zeros <= n - k or zeros == n:
                f2 = k + zeros
            else:
                f2 = n - zeros
            return (f1, f2)

    return evaluate


def jump_value(x: BitString, k: int) -> int:
    """Jump fitness: k + |x|_1 on the plateau and at 1^n, n - |x|_1 in the valley."""
    n = x.n
    ones = x.count_ones()
    if ones <= n - k or ones == n:
        return k + ones
    return n - ones


def ojzj_value(x: BitString, k: int) -> tuple[int, int]:
    """Bi-objective value (f1, f2): f1 jumps on one-bits, f2 on zero-bits."""
    n = x.n
    f1 = jump_value(x, k)
    zeros = x.count_zeros()
    if zeros <= n - k or zeros == n:
        f2 = k + zeros
    else:
        f2 = n - zeros
    return (f1, f2)


def pareto_front(n: int, k: int) -> frozenset[tuple[int, int]]:
    """The full Pareto front {(a, 2k+n-a) : a in [2k..n] or a in {k, n+k}}.

    Contains exactly n - 2k + 3 objective vectors.
    """
    _check_range(n, k)
    points = {(a, 2 * k + n - a) for a in range(2 * k, n + 1)}
    points.add((k, n + k))
    points.add((n + k, k))
    return frozenset(points)


def inner_pareto_front(n: int, k: int) -> frozenset[tuple[int, int]]:
    """The inner front: images of strings with |x|_1 in [k..n-k]."""
    _check_range(n, k)
    return frozenset((a, 2 * k + n - a) for a in range(2 * k, n + 1))


def extremal_vectors(n: int, k: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Objective vectors of the all-zeros and all-ones strings."""
    _check_range(n, k)
    return (k, n + k), (n + k, k)


def _check_range(n: int, k: int) -> None:
    if not 2 <= k <= n // 4:
        raise ValueError(f"jump size k={k} outside the admissible range [2, n/4] for n={n}")


@dataclass(frozen=True)
class FrontCoverage:
    """Which part of the Pareto front a population (or run history) covers."""

    covered: frozenset[tuple[int, int]]
    inner_covered: bool
    extremal_found: str  # "none" | "one" | "both"

    @property
    def full(self) -> bool:
        return self.inner_covered and self.extremal_found == "both"


def classify_coverage(
    population: Iterable[Individual] | Sequence[Individual], spec: ProblemSpec
) -> FrontCoverage:
    """Intersect the population's objective vectors with the Pareto front.

    All individuals must carry cached objective values for ``spec``.
    """
    if spec.kind != "ojzj":
        raise ValueError("front coverage is defined for the ojzj benchmark only")
    present = set()
    for ind in population:
        if ind.objectives is None:
            raise ValueError("population contains an unevaluated individual")
        present.add(ind.objectives)
    return coverage_from_vectors(present, spec)


def coverage_from_vectors(vectors: Iterable[tuple[int, int]], spec: ProblemSpec) -> FrontCoverage:
    """FrontCoverage from a set of objective vectors (already evaluated)."""
    front = pareto_front(spec.n, spec.k)
    inner = inner_pareto_front(spec.n, spec.k)
    covered = frozenset(v for v in vectors if v in front)
    n_extremal = sum(1 for v in extremal_vectors(spec.n, spec.k) if v in covered)
    found = ("none", "one", "both")[n_extremal]
    return FrontCoverage(covered=covered, inner_covered=inner <= covered, extremal_found=found)
