"""NSGA-II survivor selection over individuals, with pluggable final tie-breaker.

The generational loop: create N offspring by uniform parent choice plus
standard bit mutation, rank the combined 2N individuals by non-dominated
sorting, fill the next population front by front, break the critical front by
crowding distance, and fill the last ``s`` slots from the critical CD group
either uniformly at random (``classic``) or evenly across objective values
(``balanced``).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Sequence

from . import selection
from .benchmarks import BenchmarkSpec, evaluate
from .core import Individual, mutate
from .errors import ContractViolationError
from .rng import RngStream

TIEBREAKS = ("classic", "balanced")


@total_ordering
class RationalCD:
    """Exact crowding-distance value: a non-negative rational or +infinity.

    Kept exact (no floats) because the balanced tie-breaker partitions by CD
    equality; round-off would corrupt group boundaries.
    """

    __slots__ = ("_frac",)

    def __init__(self, numerator: int, denominator: int = 1):
        if denominator <= 0:
            raise ContractViolationError("denominator must be positive")
        if numerator < 0:
            raise ContractViolationError("crowding distance is non-negative")
        self._frac = Fraction(numerator, denominator)

    @classmethod
    def infinity(cls) -> "RationalCD":
        obj = cls.__new__(cls)
        obj._frac = None
        return obj

    @property
    def is_infinite(self) -> bool:
        return self._frac is None

    @property
    def numerator(self) -> int | None:
        return None if self._frac is None else self._frac.numerator

    @property
    def denominator(self) -> int | None:
        return None if self._frac is None else self._frac.denominator

    @property
    def is_positive(self) -> bool:
        return self._frac is None or self._frac > 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalCD):
            return NotImplemented
        return self._frac == other._frac

    def __lt__(self, other) -> bool:
        if not isinstance(other, RationalCD):
            return NotImplemented
        if self._frac is None:
            return False
        if other._frac is None:
            return True
        return self._frac < other._frac

    def __hash__(self) -> int:
        return hash(self._frac)

    def __repr__(self) -> str:
        if self._frac is None:
            return "RationalCD.infinity()"
        return f"RationalCD({self._frac.numerator}, {self._frac.denominator})"


@dataclass
class RankedPopulation:
    """Combined population annotated with non-dominated ranks.

    ``fronts[j]`` holds the member indices of rank ``j + 1`` in ascending
    order; the fronts partition ``members``.  ``cd_of`` maps critical-front
    member indices to their crowding distance once attached.
    """

    members: list[Individual]
    ranks: list[int]
    fronts: list[list[int]]
    cd_of: dict[int, RationalCD] | None = None

    def rank_of(self, index: int) -> int:
        return self.ranks[index]

    def front(self, rank: int) -> list[Individual]:
        return [self.members[i] for i in self.fronts[rank - 1]]

    def attach_critical_cd(self, target: int) -> int:
        """Compute crowding distances of the critical front for ``target`` slots.

        Returns the critical rank and fills ``cd_of`` for that front's members.
        """
        j_star = selection.critical_rank_index([len(f) for f in self.fronts], target)
        front = self.fronts[j_star - 1]
        cds = crowding_distance([self.members[i] for i in front])
        self.cd_of = dict(zip(front, cds))
        return j_star


@dataclass
class StepAudit:
    """Per-generation bookkeeping used by invariant checks and tests."""

    critical_rank: int
    critical_front_size: int
    slots_from_critical_front: int
    distinct_values_in_critical_front: int
    available_per_value: Counter
    kept_per_value: Counter
    kept_from_cd_group_per_value: Counter
    tail_slots: int


@dataclass
class SelectionOutcome:
    """Result of one generational step: the next population plus its audit."""

    next_population: list[Individual]
    audit: StepAudit


def nondominated_sort(population: Sequence[Individual]) -> RankedPopulation:
    """Partition a population into non-dominated fronts (ranks 1, 2, ...)."""
    members = list(population)
    if not members:
        raise ContractViolationError("cannot sort an empty population")
    values = [tuple(ind.objective) for ind in members]
    ranks = selection.domination_ranks(values)
    return RankedPopulation(members=members, ranks=ranks, fronts=selection.fronts_from_ranks(ranks))


def critical_rank(ranked: RankedPopulation, target: int) -> int:
    """Minimal rank j* whose cumulative front size reaches ``target``."""
    return selection.critical_rank_index([len(f) for f in ranked.fronts], target)


def crowding_distance(front: Sequence[Individual]) -> list[RationalCD]:
    """Crowding distance of each front member, in front order."""
    members = list(front)
    values = [tuple(ind.objective) for ind in members]
    inf, nums, denom = selection.crowding_numerators(values, list(range(len(members))))
    return [
        RationalCD.infinity() if is_inf else RationalCD(num, denom)
        for is_inf, num in zip(inf, nums)
    ]


def critical_cd_index(groups: Sequence[Sequence], d: int) -> int:
    """Minimal CD-group index c* whose cumulative size reaches ``d`` slots."""
    return selection.critical_cd_group_index([len(g) for g in groups], d)


def select_random(pool: Sequence[Individual], s: int, rng: RngStream) -> list[Individual]:
    """Uniform sub-multiset of size ``s`` (the classic final tie-breaker)."""
    picked = selection.select_random_indices(list(range(len(pool))), s, rng)
    return [pool[i] for i in picked]


def select_balanced(pool: Sequence[Individual], s: int, rng: RngStream) -> list[Individual]:
    """Balanced final tie-breaker: quota ``s // a`` per objective value, then fill."""
    values = [tuple(ind.objective) for ind in pool]
    picked = selection.select_balanced_indices(list(range(len(pool))), values, s, rng)
    return [pool[i] for i in picked]


def make_offspring(
    population: Sequence[Individual], spec: BenchmarkSpec, rng: RngStream
) -> list[Individual]:
    """N offspring: per offspring one uniform parent draw, then standard bit mutation."""
    n_pop = len(population)
    offspring = []
    for _ in range(n_pop):
        parent = population[rng.next_index(n_pop)]
        genotype = mutate(parent.genotype, rng)
        offspring.append(Individual(genotype, evaluate(spec, genotype)))
    return offspring


def step(
    population: Sequence[Individual],
    spec: BenchmarkSpec,
    tiebreak: str,
    rng: RngStream,
) -> SelectionOutcome:
    """One generation: offspring, combined ranking, survivor selection.

    Evaluates each offspring exactly once (N evaluations per step) and returns
    the next population of the same size.
    """
    if tiebreak not in TIEBREAKS:
        raise ContractViolationError(f"unknown tiebreak {tiebreak!r}")
    parents = list(population)
    n_pop = len(parents)
    if __debug__:  # cached objective values must match re-evaluation
        assert all(ind.objective == evaluate(spec, ind.genotype) for ind in parents)
    combined = parents + make_offspring(parents, spec, rng)
    values = [tuple(ind.objective) for ind in combined]
    detail = selection.select_population(values, n_pop, tiebreak, rng)

    critical_set = set(detail.critical_front)
    kept_per_value = Counter(values[i] for i in detail.kept if i in critical_set)
    audit = StepAudit(
        critical_rank=detail.critical_rank,
        critical_front_size=len(detail.critical_front),
        slots_from_critical_front=detail.slots_from_critical_front,
        distinct_values_in_critical_front=len({values[i] for i in detail.critical_front}),
        available_per_value=Counter(values[i] for i in detail.critical_front),
        kept_per_value=kept_per_value,
        kept_from_cd_group_per_value=Counter(values[i] for i in detail.tail),
        tail_slots=detail.tail_slots,
    )
    return SelectionOutcome(
        next_population=[combined[i] for i in detail.kept],
        audit=audit,
    )
