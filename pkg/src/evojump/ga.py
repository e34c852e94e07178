"""The steady-state (mu+1) genetic algorithm on the Jump benchmark.

Each generation creates exactly one child: with probability pc from a uniform
crossover of two distinct uniformly drawn parents followed by bit-wise
mutation, otherwise by mutating a single uniformly drawn parent. One worst
individual of the mu+1 candidates is then removed, ties broken uniformly at
random (the child competes on equal footing with the parents).

Removal of a single worst member makes the best fitness monotone, and once the
whole population sits on the local optimum (all members with n-k one-bits) it
stays there until the all-ones string is found.
"""

from __future__ import annotations

from dataclasses import dataclass

from .benchmarks import ProblemSpec
from .core import BitString, Individual, RngStream, sample_uniform
from .nsga2 import bitwise_mutation
from .results import RunResult

__all__ = ["GaConfig", "uniform_crossover_one", "ga_step", "ga_run"]


@dataclass(frozen=True)
class GaConfig:
    """Parameterization of one (mu+1) GA run on Jump."""

    spec: ProblemSpec
    mu: int = 2
    pc: float = 0.9
    mutation_rate: float | None = None
    max_evals: int | None = None
    seed: int = 0

    def __post_init__(self):
        if self.spec.kind != "jump":
            raise ValueError("the (mu+1) GA runs on the jump benchmark")
        if self.mu < 1:
            raise ValueError(f"population size must be positive, got {self.mu}")
        if not 0.0 <= self.pc <= 1.0:
            raise ValueError(f"crossover probability must be in [0, 1], got {self.pc}")
        if self.pc > 0.0 and self.mu < 2:
            raise ValueError("crossover needs two distinct parents: mu >= 2 when pc > 0")
        if self.mutation_rate is None:
            object.__setattr__(self, "mutation_rate", 1.0 / self.spec.n)
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise ValueError(f"mutation rate must be in [0, 1], got {self.mutation_rate}")
        if self.max_evals is not None and self.max_evals < 0:
            raise ValueError("max_evals must be non-negative")


def uniform_crossover_one(x: BitString, y: BitString, rng: RngStream) -> BitString:
    """Single-child uniform crossover: each bit comes from x or y w.p. 1/2."""
    if x.n != y.n:
        raise ValueError(f"length mismatch: {x.n} vs {y.n}")
    mask = rng.bits(x.n)
    keep = ((1 << x.n) - 1) ^ mask
    return BitString(x.n, (x.value & mask) | (y.value & keep))


@dataclass
class GaStepInfo:
    """Bookkeeping for one generation, for run loops that track events."""

    child: Individual
    child_kept: bool
    removed_fitness: int
    crossover: bool


def ga_step(
    population: list[Individual],
    config: GaConfig,
    rng: RngStream,
    info: GaStepInfo | None = None,
    evaluate=None,
) -> list[Individual]:
    """One generation: create and evaluate one child, remove one worst member.

    Pass a GaStepInfo to receive what happened (the run loop uses this to
    update counters in O(1) instead of rescanning the population); ``evaluate``
    lets the run loop hoist the fitness closure out of the per-step path.
    """
    mu = len(population)
    crossed = rng.random() < config.pc
    if crossed:
        i = rng.randrange(mu)
        j = rng.randrange(mu - 1)
        if j >= i:
            j += 1
        genome = uniform_crossover_one(population[i].genome, population[j].genome, rng)
    else:
        genome = population[rng.randrange(mu)].genome
    genome = bitwise_mutation(genome, config.mutation_rate, rng)
    if evaluate is None:
        evaluate = config.spec.evaluator()
    child = Individual(genome, evaluate(genome))

    child_fit = child.objectives[0]
    worst = child_fit
    for ind in population:
        f = ind.objectives[0]
        if f < worst:
            worst = f
    lowest = [t for t, ind in enumerate(population) if ind.objectives[0] == worst]
    if child_fit == worst:
        lowest.append(mu)
    removed = lowest[0] if len(lowest) == 1 else lowest[rng.randrange(len(lowest))]

    if removed == mu:
        survivors = list(population)
    else:
        survivors = list(population)
        survivors[removed] = child
    if info is not None:
        info.child = child
        info.child_kept = removed != mu
        info.removed_fitness = worst
        info.crossover = crossed
    return survivors


def ga_run(config: GaConfig) -> RunResult:
    """Run until some individual is the all-ones string or the budget ends.

    Records the first iteration at which the entire population sat on the
    local optimum (all members with n-k one-bits, fitness n) and whether the
    step that produced the optimum used crossover.
    """
    spec = config.spec
    n, k = spec.n, spec.k
    rng = RngStream(config.seed)
    evaluate = spec.evaluator()
    optimum = n + k
    local = n

    population = []
    for _ in range(config.mu):
        g = sample_uniform(n, rng)
        population.append(Individual(g, evaluate(g)))
    evaluations = config.mu
    iterations = 0

    at_local = sum(1 for ind in population if ind.objectives[0] == local)
    local_iter = 0 if at_local == config.mu else None
    success = any(ind.objectives[0] == optimum for ind in population)
    crossover_made_optimum: bool | None = None

    info = GaStepInfo(child=population[0], child_kept=False, removed_fitness=0, crossover=False)
    while not success and (config.max_evals is None or evaluations < config.max_evals):
        iterations += 1
        population = ga_step(population, config, rng, info, evaluate)
        evaluations += 1
        if info.child.objectives[0] == optimum:
            success = True
            crossover_made_optimum = info.crossover
            break
        if local_iter is None:
            if info.child_kept:
                at_local += (info.child.objectives[0] == local) - (info.removed_fitness == local)
            if at_local == config.mu:
                local_iter = iterations

    return RunResult(
        algorithm="ga",
        seed=config.seed,
        evaluations=evaluations,
        iterations=iterations,
        success=success,
        crossover_made_extremal=crossover_made_optimum,
        local_optimum_iter=local_iter,
    )
