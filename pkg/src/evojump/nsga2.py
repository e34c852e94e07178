"""NSGA-II: non-dominated sorting, crowding, survival, parent selection, variation.

Everything here is the classic algorithm specialized to integer-valued
maximization objectives. Sorting deduplicates objective vectors first (equal
vectors always share a rank) and ranks the distinct vectors with an
O(D log D) sweep for two objectives, so a generation costs far less than the
textbook O(N^2) pairwise pass; the brute-force oracle in
:mod:`evojump.oracle` re-derives ranks from the recursive definition to keep
this implementation honest.

Reproducibility conventions (they matter for bit-identical reruns):

* crowding-distance ties are ordered by explicit per-objective tie orders;
  the generation loop draws fresh random orders from the run's seeded stream
  every generation (see :func:`random_tie_orders`), while the bare function
  defaults to member-index order. Only the first and last of an objective's
  order get infinity.
* survival ties at the crowding cut are resolved by shuffling the tied group;
* the no-crossover branch still mutates copies, parents are never modified.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from math import inf

from .benchmarks import (
    ProblemSpec,
    coverage_from_vectors,
    extremal_vectors,
    inner_pareto_front,
    pareto_front,
)
from .core import BitString, Individual, RngStream, sample_uniform
from .results import RunResult, diversity_probe, probe_interval

__all__ = [
    "SELECTION_METHODS",
    "Nsga2Config",
    "RankedPopulation",
    "StepEvents",
    "dominates",
    "non_dominated_sort",
    "crowding_assign",
    "random_tie_orders",
    "rank_population",
    "survival_select",
    "binary_tournament",
    "select_parent_pairs",
    "uniform_crossover_two",
    "bitwise_mutation",
    "nsga2_step",
    "nsga2_run",
]

SELECTION_METHODS = ("fair", "uniform", "n_tournaments", "two_permutation")


def dominates(a: tuple, b: tuple) -> bool:
    """Pareto dominance for maximization: a >= b componentwise and a != b."""
    if len(a) != len(b):
        raise ValueError(f"objective arity mismatch: {len(a)} vs {len(b)}")
    for x, y in zip(a, b):
        if x < y:
            return False
    return a != b


def _objective_vector(member) -> tuple:
    obj = getattr(member, "objectives", member)
    if obj is None:
        raise ValueError("population contains an unevaluated individual")
    return tuple(obj)


def _objective_vectors(population) -> list[tuple]:
    """Cached-objective extraction; falls back to bare tuples."""
    try:
        vectors = [m.objectives for m in population]
    except AttributeError:
        return [tuple(m) for m in population]
    if any(v is None for v in vectors):
        raise ValueError("population contains an unevaluated individual")
    return vectors


def non_dominated_sort(population) -> list[int]:
    """Per-member ranks (1-based) under the recursive front definition.

    Accepts Individuals or bare objective tuples. Members with equal objective
    vectors always share a rank, so the distinct vectors are ranked once and
    mapped back.
    """
    if not population:
        return []
    vectors = _objective_vectors(population)
    arity = len(vectors[0])
    if any(len(v) != arity for v in vectors):
        raise ValueError("population mixes objective arities")
    distinct = list(dict.fromkeys(vectors))
    if arity == 2:
        rank_of = _rank_distinct_2d(distinct)
    elif arity == 1:
        ordered = sorted(distinct, reverse=True)
        rank_of = {v: r for r, v in enumerate(ordered, start=1)}
    else:
        rank_of = _rank_distinct_peel(distinct)
    return [rank_of[v] for v in vectors]


def _rank_distinct_2d(distinct: list[tuple]) -> dict[tuple, int]:
    """Sweep ranking of distinct bi-objective vectors.

    After sorting by (f1 desc, f2 desc), an earlier vector dominates a later
    one iff its f2 is >= the later one's, so a vector's rank is one more than
    the deepest rank whose maximum-f2-so-far still reaches it. Those maxima are
    non-increasing by rank, which makes the lookup a bisection.
    """
    order = sorted(distinct, key=lambda v: (-v[0], -v[1]))
    neg_max_f2: list[int] = []  # -max f2 per rank, ascending
    rank_of: dict[tuple, int] = {}
    for v in order:
        key = -v[1]
        r = bisect_right(neg_max_f2, key)
        if r == len(neg_max_f2):
            neg_max_f2.append(key)
        else:
            neg_max_f2[r] = key
        rank_of[v] = r + 1
    return rank_of


def _rank_distinct_peel(distinct: list[tuple]) -> dict[tuple, int]:
    """Generic fallback: peel non-dominated layers of the distinct vectors."""
    remaining = list(distinct)
    rank_of: dict[tuple, int] = {}
    rank = 0
    while remaining:
        rank += 1
        layer = [v for v in remaining if not any(dominates(u, v) for u in remaining)]
        for v in layer:
            rank_of[v] = rank
        remaining = [v for v in remaining if v not in rank_of]
    return rank_of


def crowding_assign(front, tie_orders: list[list[int]] | None = None) -> list[float]:
    """Crowding distances for the members of one front.

    Per objective the front is sorted ascending; the first and last of that
    order get an infinite contribution, interior members get (right neighbor -
    left neighbor) / (max - min), and the total is summed over objectives.
    When max == min for an objective, interior contributions are 0 while the
    two boundary members still get infinity.

    ``tie_orders`` fixes how members with equal objective values are ordered:
    one list of distinct sort keys per objective (member index order when
    omitted). The generation loop passes freshly shuffled orders so that the
    protected representatives of duplicated vectors rotate; see
    :func:`random_tie_orders`.
    """
    m = len(front)
    if m == 0:
        return []
    vectors = _objective_vectors(front)
    arity = len(vectors[0])
    crowd = [0.0] * m
    for j in range(arity):
        keys = range(m) if tie_orders is None else tie_orders[j]
        triples = sorted(zip((v[j] for v in vectors), keys, range(m)))
        crowd[triples[0][2]] = inf
        crowd[triples[-1][2]] = inf
        lo = triples[0][0]
        hi = triples[-1][0]
        if hi > lo:
            span = hi - lo
            for t in range(1, m - 1):
                crowd[triples[t][2]] += (triples[t + 1][0] - triples[t - 1][0]) / span
    return crowd


def random_tie_orders(arity: int, m: int, rng: RngStream) -> list[list[int]]:
    """One independent random tie-breaking order per objective.

    Equal objective values leave the crowding sort order underdetermined.
    Re-drawing the tie order every generation (per objective) means each
    duplicated vector protects up to four rotating members per front, which
    keeps duplicated fitness classes churning instead of anchoring one clone
    family; the boundary diversity that crossover exploits depends on it.
    """
    orders = []
    for _ in range(arity):
        perm = list(range(m))
        rng.shuffle(perm)
        orders.append(perm)
    return orders


@dataclass
class RankedPopulation:
    """A population annotated with ranks, crowding distances, and the cut rank.

    ``critical_rank`` is the rank at which the most recent survival cut fell
    (None for populations that did not come out of a survival selection).
    """

    members: list[Individual]
    ranks: list[int]
    crowding: list[float]
    critical_rank: int | None = None

    def __len__(self) -> int:
        return len(self.members)

    def fronts(self) -> dict[int, list[int]]:
        by_rank: dict[int, list[int]] = {}
        for i, r in enumerate(self.ranks):
            by_rank.setdefault(r, []).append(i)
        return by_rank


def rank_population(
    members: list[Individual],
    critical_rank: int | None = None,
    ranks: list[int] | None = None,
    rng: RngStream | None = None,
) -> RankedPopulation:
    """Rank and crowd a population, checking the crowding-count invariant.

    Precomputed ranks may be passed when the caller already knows them
    (survival selection preserves member ranks exactly). With an ``rng``,
    crowding ties are ordered by fresh random permutations; without one, by
    member index.
    """
    if ranks is None:
        ranks = non_dominated_sort(members)
    arity = len(members[0].objectives) if members else 0
    crowding = [0.0] * len(members)
    by_rank: dict[int, list[int]] = {}
    for i, r in enumerate(ranks):
        by_rank.setdefault(r, []).append(i)
    for indices in by_rank.values():
        front = [members[i] for i in indices]
        orders = None if rng is None else random_tie_orders(arity, len(front), rng)
        for i, c in zip(indices, crowding_assign(front, orders)):
            crowding[i] = c
        # At most 4 members per distinct objective vector can sit next to a
        # value change in some objective's sorted order.
        positive = sum(1 for i in indices if crowding[i] > 0.0)
        distinct = len({members[i].objectives for i in indices})
        assert positive <= 4 * distinct, (
            f"crowding invariant violated: {positive} positive distances "
            f"for {distinct} distinct vectors"
        )
    return RankedPopulation(members=members, ranks=ranks, crowding=crowding, critical_rank=critical_rank)


def survival_select(
    combined: list[Individual],
    n_keep: int,
    rng: RngStream,
    ranks: list[int] | None = None,
    crowding: list[float] | None = None,
) -> list[Individual]:
    """Elitist environmental selection down to ``n_keep`` members.

    Whole fronts are kept in rank order until one no longer fits; within that
    critical front the highest crowding distances win, with ties at the cut
    boundary broken uniformly at random. Precomputed annotations can be passed
    in; otherwise ranks are computed here and crowding only for the critical
    front (with randomly ordered ties, see :func:`random_tie_orders`).
    """
    survivors, _, _ = _select_survivors(combined, n_keep, rng, ranks, crowding)
    return survivors


def _select_survivors(
    combined: list[Individual],
    n_keep: int,
    rng: RngStream,
    ranks: list[int] | None,
    crowding: list[float] | None,
) -> tuple[list[Individual], int | None, list[int]]:
    if n_keep > len(combined):
        raise ValueError(f"cannot keep {n_keep} of {len(combined)} members")
    if ranks is None:
        ranks = non_dominated_sort(combined)
    by_rank: dict[int, list[int]] = {}
    for i, r in enumerate(ranks):
        by_rank.setdefault(r, []).append(i)

    kept: list[int] = []
    critical: int | None = None
    for rank in sorted(by_rank):
        indices = by_rank[rank]
        if len(kept) + len(indices) <= n_keep:
            kept.extend(indices)
            continue
        critical = rank
        slots = n_keep - len(kept)
        if slots:
            if crowding is None:
                front = [combined[i] for i in indices]
                arity = len(front[0].objectives)
                crowd = crowding_assign(
                    front, random_tie_orders(arity, len(front), rng)
                )
            else:
                crowd = [crowding[i] for i in indices]
            threshold = sorted(crowd, reverse=True)[slots - 1]
            above = [i for i, c in zip(indices, crowd) if c > threshold]
            tied = [i for i, c in zip(indices, crowd) if c == threshold]
            need = slots - len(above)
            if need < len(tied):
                rng.shuffle(tied)
                tied = tied[:need]
            kept.extend(sorted(above + tied))
        break
    # Survivor ranks equal their ranks in the combined population: no member
    # of a rank below the cut is removed, and equal-rank members never
    # dominate each other, so every survivor keeps its full dominator set.
    return [combined[i] for i in kept], critical, [ranks[i] for i in kept]


def binary_tournament(a, b, rng: RngStream) -> Individual:
    """Tournament between two (individual, rank, crowding) entries.

    Lower rank wins; equal ranks prefer the larger crowding distance; remaining
    ties are broken by a fair coin.
    """
    ind_a, rank_a, crowd_a = a
    ind_b, rank_b, crowd_b = b
    if rank_a != rank_b:
        return ind_a if rank_a < rank_b else ind_b
    if crowd_a != crowd_b:
        return ind_a if crowd_a > crowd_b else ind_b
    return ind_a if rng.random() < 0.5 else ind_b


def _tournament_winner(ranked: RankedPopulation, i: int, j: int, rng: RngStream) -> int:
    ranks = ranked.ranks
    if ranks[i] != ranks[j]:
        return i if ranks[i] < ranks[j] else j
    crowd = ranked.crowding
    if crowd[i] != crowd[j]:
        return i if crowd[i] > crowd[j] else j
    return i if rng.random() < 0.5 else j


def select_parent_pairs(
    ranked: RankedPopulation, method: str, rng: RngStream
) -> list[tuple[Individual, Individual]]:
    """Form N/2 ordered parent pairs with one of the four selection schemes.

    fair: every member appears in exactly one pair, pairing random.
    uniform: every pair slot is an independent uniform member.
    n_tournaments: N binary tournaments between distinct random contestants;
        the N winners are randomly grouped into pairs (repeats possible).
    two_permutation: two random permutations, tournaments between consecutive
        positions, the two winners of each length-4 interval form a pair; at
        N % 4 == 2 the leftover winner of each permutation forms a final pair.
    """
    members = ranked.members
    n = len(members)
    if n % 2:
        raise ValueError(f"population size must be even, got {n}")
    if method == "fair":
        order = list(range(n))
        rng.shuffle(order)
        return [(members[order[t]], members[order[t + 1]]) for t in range(0, n, 2)]
    if method == "uniform":
        return [
            (members[rng.randrange(n)], members[rng.randrange(n)]) for _ in range(n // 2)
        ]
    if method == "n_tournaments":
        winners = []
        for _ in range(n):
            i = rng.randrange(n)
            j = rng.randrange(n - 1)
            if j >= i:
                j += 1
            winners.append(_tournament_winner(ranked, i, j, rng))
        rng.shuffle(winners)
        return [(members[winners[t]], members[winners[t + 1]]) for t in range(0, n, 2)]
    if method == "two_permutation":
        pairs: list[tuple[Individual, Individual]] = []
        leftovers: list[int] = []
        for _ in range(2):
            perm = list(range(n))
            rng.shuffle(perm)
            wins = [
                _tournament_winner(ranked, perm[t], perm[t + 1], rng)
                for t in range(0, n, 2)
            ]
            for t in range(0, len(wins) - 1, 2):
                pairs.append((members[wins[t]], members[wins[t + 1]]))
            if len(wins) % 2:
                leftovers.append(wins[-1])
        if leftovers:
            pairs.append((members[leftovers[0]], members[leftovers[1]]))
        return pairs
    raise ValueError(f"unknown selection method {method!r}, expected one of {SELECTION_METHODS}")


def uniform_crossover_two(
    x: BitString, y: BitString, rng: RngStream
) -> tuple[BitString, BitString]:
    """2-offspring uniform crossover.

    Each position independently goes to the first child from x or from y with
    probability 1/2; the second child takes the bits the first one did not,
    so xor(c1, c2) == xor(x, y) always.
    """
    if x.n != y.n:
        raise ValueError(f"length mismatch: {x.n} vs {y.n}")
    mask = rng.bits(x.n)
    keep = ((1 << x.n) - 1) ^ mask
    c1 = (x.value & mask) | (y.value & keep)
    c2 = (y.value & mask) | (x.value & keep)
    return BitString(x.n, c1), BitString(x.n, c2)


def bitwise_mutation(x: BitString, rate: float, rng: RngStream) -> BitString:
    """Flip each bit independently with the given probability.

    Implemented by drawing the Binomial(n, rate) number of flips and then a
    uniform set of positions of that size, which has exactly the independent
    per-bit distribution.
    """
    if not 0.0 <= rate <= 1.0:
        raise ValueError(f"mutation rate must be in [0, 1], got {rate}")
    flips = rng.binomial(x.n, rate)
    if flips == 0:
        return x
    if flips == 1:
        return BitString(x.n, x.value ^ (1 << rng.randrange(x.n)))
    if flips == x.n:
        return BitString(x.n, x.value ^ ((1 << x.n) - 1))
    mask = 0
    for p in rng.distinct_indices(x.n, flips):
        mask |= 1 << p
    return BitString(x.n, x.value ^ mask)


@dataclass(frozen=True)
class Nsga2Config:
    """Full parameterization of one NSGA-II run on OneJumpZeroJump.

    Exactly one of ``pop_size`` / ``pop_factor`` must be given; a factor c
    resolves to N = c * (n - 2k + 3). N must be even (the algorithm forms N/2
    parent pairs). ``mutation_rate`` defaults to 1/n.
    """

    spec: ProblemSpec
    pop_size: int | None = None
    pop_factor: int | None = None
    pc: float = 0.9
    mutation_rate: float | None = None
    selection: str = "fair"
    max_evals: int | None = None
    seed: int = 0

    def __post_init__(self):
        if self.spec.kind != "ojzj":
            raise ValueError("NSGA-II runs are defined on the ojzj benchmark")
        if (self.pop_size is None) == (self.pop_factor is None):
            raise ValueError("exactly one of pop_size / pop_factor must be given")
        if self.pop_factor is not None:
            n, k = self.spec.n, self.spec.k
            object.__setattr__(self, "pop_size", self.pop_factor * (n - 2 * k + 3))
        if self.pop_size < 2 or self.pop_size % 2:
            raise ValueError(f"population size must be even and >= 2, got {self.pop_size}")
        if not 0.0 <= self.pc <= 1.0:
            raise ValueError(f"crossover probability must be in [0, 1], got {self.pc}")
        if self.mutation_rate is None:
            object.__setattr__(self, "mutation_rate", 1.0 / self.spec.n)
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise ValueError(f"mutation rate must be in [0, 1], got {self.mutation_rate}")
        if self.selection not in SELECTION_METHODS:
            raise ValueError(
                f"unknown selection method {self.selection!r}, expected one of {SELECTION_METHODS}"
            )
        if self.max_evals is not None and self.max_evals < 0:
            raise ValueError("max_evals must be non-negative")


@dataclass
class StepEvents:
    """What happened during one generation."""

    evaluations: int
    crossover_pairs: int
    # (objective vector, crossover involved) for every offspring that hit an
    # extremal front point, in creation order.
    extremal_creations: list[tuple[tuple[int, int], bool]] = field(default_factory=list)


def nsga2_step(
    state: RankedPopulation, config: Nsga2Config, rng: RngStream
) -> tuple[RankedPopulation, StepEvents]:
    """One generation: select pairs, vary, evaluate, survive, re-annotate."""
    n_pop = config.pop_size
    if len(state) != n_pop:
        raise ValueError(f"expected a population of size {n_pop}, got {len(state)}")
    evaluate = config.spec.evaluator()
    extremals = set(extremal_vectors(config.spec.n, config.spec.k))
    pc = config.pc
    rate = config.mutation_rate

    pairs = select_parent_pairs(state, config.selection, rng)
    offspring: list[Individual] = []
    events = StepEvents(evaluations=0, crossover_pairs=0)
    for pa, pb in pairs:
        crossed = rng.random() < pc
        if crossed:
            events.crossover_pairs += 1
            g1, g2 = uniform_crossover_two(pa.genome, pb.genome, rng)
        else:
            g1, g2 = pa.genome, pb.genome
        for g in (bitwise_mutation(g1, rate, rng), bitwise_mutation(g2, rate, rng)):
            child = Individual(g, evaluate(g))
            offspring.append(child)
            if child.objectives in extremals:
                events.extremal_creations.append((child.objectives, crossed))
    events.evaluations = len(offspring)

    combined = state.members + offspring
    survivors, critical, ranks = _select_survivors(combined, n_pop, rng, None, None)
    return rank_population(survivors, critical_rank=critical, ranks=ranks, rng=rng), events


def nsga2_run(config: Nsga2Config, probe_diversity: bool = False) -> RunResult:
    """Run until the population covers the full Pareto front or the budget ends.

    The initial population costs N evaluations and each offspring one more.
    Coverage events (inner front covered, extremal points discovered) are
    recorded the first time they happen; when N >= 4(n - 2k + 3) the set of
    covered front points is checked to be monotonically nondecreasing, which
    the survival mechanism must guarantee at that size.
    """
    spec = config.spec
    n_pop = config.pop_size
    rng = RngStream(config.seed)
    evaluate = spec.evaluator()

    members = []
    for _ in range(n_pop):
        g = sample_uniform(spec.n, rng)
        members.append(Individual(g, evaluate(g)))
    state = rank_population(members, rng=rng)
    evaluations = n_pop
    iterations = 0

    front = pareto_front(spec.n, spec.k)
    inner = inner_pareto_front(spec.n, spec.k)
    never_lose_guaranteed = n_pop >= 4 * (spec.n - 2 * spec.k + 3)
    interval = probe_interval(spec)

    covered = {ind.objectives for ind in state.members} & front
    covered_ever = set(covered)
    provenance: dict[tuple[int, int], bool | None] = {
        v: None for v in extremal_vectors(spec.n, spec.k) if v in covered_ever
    }
    inner_iter = 0 if inner <= covered_ever else None
    extremal_iters = [0] * len(provenance)
    monotone = True
    success = len(covered) == len(front)

    result = RunResult(
        algorithm="nsga2",
        seed=config.seed,
        evaluations=evaluations,
        iterations=0,
        success=success,
    )

    while not success and (config.max_evals is None or evaluations < config.max_evals):
        iterations += 1
        state, events = nsga2_step(state, config, rng)
        evaluations += events.evaluations

        previous = covered
        covered = {ind.objectives for ind in state.members} & front
        if not previous <= covered:
            monotone = False
            assert not never_lose_guaranteed, (
                f"never-lose violated at iteration {iterations}: "
                f"lost {previous - covered}"
            )
        for vector, crossed in events.extremal_creations:
            if vector not in provenance:
                provenance[vector] = crossed
                extremal_iters.append(iterations)
                covered_ever.add(vector)
        covered_ever |= covered
        if inner_iter is None and inner <= covered_ever:
            inner_iter = iterations
        success = len(covered) == len(front)

        if probe_diversity and iterations % interval == 0:
            history = coverage_from_vectors(covered_ever, spec)
            result.diversity.extend(
                diversity_probe(state.members, spec, history, iteration=iterations)
            )

    result.evaluations = evaluations
    result.iterations = iterations
    result.success = success
    result.inner_cover_iter = inner_iter
    result.first_extremal_iter = extremal_iters[0] if extremal_iters else None
    result.second_extremal_iter = extremal_iters[1] if len(extremal_iters) > 1 else None
    result.coverage_monotone = monotone
    flags = [v for v in provenance.values() if v is not None]
    result.crossover_made_extremal = any(flags) if provenance else None
    return result
