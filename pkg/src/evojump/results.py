"""Per-run outcome records and the boundary-diversity probe.

The diversity probe measures how far apart the individuals sitting at the two
outermost inner-front fitness levels (|x|_1 = k and |x|_1 = n-k) have drifted:
half the maximum pairwise Hamming distance within each group, which is exactly
the number of one-at-a-time bit exchanges a lucky crossover can skip when
assembling an extremal point. Records are flagged in-window while the inner
front has been fully covered but no extremal point has been discovered yet;
only those records enter the reported diversity statistics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from statistics import fmean

from .benchmarks import FrontCoverage, ProblemSpec
from .core import Individual

__all__ = ["DiversityRecord", "RunResult", "diversity_probe", "probe_interval"]

GROUP_LOW = "k_ones"
GROUP_HIGH = "n_minus_k_ones"


@dataclass(frozen=True)
class DiversityRecord:
    """One probe of a boundary group's spread at a given iteration."""

    iteration: int
    group: str  # "k_ones" | "n_minus_k_ones"
    value: float  # max pairwise Hamming distance within the group, divided by 2
    in_window: bool


@dataclass
class RunResult:
    """Outcome of one algorithm run (NSGA-II or (mu+1) GA).

    ``evaluations`` includes the initial population. Coverage-event iterations
    are first-time events (iteration 0 is the initial population); fields that
    do not apply to an algorithm stay None. ``crossover_made_extremal`` is True
    when crossover participated in creating any extremal point (for the GA: the
    optimum), False when all were found by mutation-only steps, and None when
    none was found or all were present at initialization.
    """

    algorithm: str
    seed: int
    evaluations: int
    iterations: int
    success: bool
    inner_cover_iter: int | None = None
    first_extremal_iter: int | None = None
    second_extremal_iter: int | None = None
    crossover_made_extremal: bool | None = None
    coverage_monotone: bool | None = None
    local_optimum_iter: int | None = None
    diversity: list[DiversityRecord] = field(default_factory=list)

    def diversity_mean(self) -> float | None:
        """Mean over this run's in-window probe values (both groups pooled)."""
        values = [rec.value for rec in self.diversity if rec.in_window]
        if not values:
            return None
        return fmean(values)


def probe_interval(spec: ProblemSpec) -> int:
    """Iterations between diversity probes: floor(n^k / 50), at least 1."""
    return max(1, spec.n**spec.k // 50)


def diversity_probe(
    population: list[Individual],
    spec: ProblemSpec,
    coverage: FrontCoverage,
    iteration: int = 0,
) -> list[DiversityRecord]:
    """Probe both boundary groups of the population.

    ``coverage`` carries the run's coverage history so far; a record is
    in-window iff the inner front has been covered and no extremal point has
    been discovered. Groups with fewer than two members probe as 0.
    """
    n, k = spec.n, spec.k
    in_window = coverage.inner_covered and coverage.extremal_found == "none"
    records = []
    for group, target in ((GROUP_LOW, k), (GROUP_HIGH, n - k)):
        distinct = {ind.genome.value for ind in population if ind.genome.value.bit_count() == target}
        value = _max_pairwise_hamming(distinct) / 2.0
        assert value <= k, "boundary-group diversity can never exceed the jump size"
        records.append(DiversityRecord(iteration=iteration, group=group, value=value, in_window=in_window))
    return records


def _max_pairwise_hamming(values: set[int]) -> int:
    if len(values) < 2:
        return 0
    items = list(values)
    best = 0
    for i, a in enumerate(items):
        for b in items[i + 1 :]:
            d = (a ^ b).bit_count()
            if d > best:
                best = d
    return best
