"""Pareto-front coverage tracking and population-size bounds.

A run terminates when the objective values seen in its populations cover the
whole Pareto front.  Coverage is tracked incrementally across generations
(the covered set only grows) because fronts can be large and runs long.
"""

from __future__ import annotations

from typing import Iterable

from .benchmarks import BenchmarkSpec, ParetoFront, front_size, pareto_front
from .core import Individual
from .errors import ContractViolationError


class CoverageTracker:
    """Tracks which Pareto-front values have appeared in the population so far."""

    def __init__(self, target: ParetoFront):
        self.target = target
        self.covered: set = set()

    @property
    def complete(self) -> bool:
        return len(self.covered) == len(self.target)

    @property
    def fraction(self) -> float:
        return len(self.covered) / len(self.target)

    def update(self, population: Iterable) -> "CoverageTracker":
        """Add the population's objective values that lie on the target front."""
        for member in population:
            value = tuple(member.objective) if isinstance(member, Individual) else tuple(member)
            if value in self.target and value not in self.covered:
                self.covered.add(value)
        return self

    def population_coverage(self, population: Iterable) -> float:
        """Fraction of the front this single population covers simultaneously.

        Unlike the cumulative ``covered`` set, this can regress between
        generations when the population size is below the survival threshold;
        it is the quantity the runtime definition terminates on.
        """
        present = set()
        for member in population:
            value = tuple(member.objective) if isinstance(member, Individual) else tuple(member)
            if value in self.target:
                present.add(value)
        return len(present) / len(self.target)

    @classmethod
    def for_spec(cls, spec: BenchmarkSpec) -> "CoverageTracker":
        return cls(pareto_front(spec))


def update_coverage(tracker: CoverageTracker, population: Iterable) -> CoverageTracker:
    """Fold a population into a tracker; idempotent on unchanged populations."""
    if population:
        first = next(iter(population))
        value = tuple(first.objective) if isinstance(first, Individual) else tuple(first)
        target_m = len(next(iter(tracker.target))) if len(tracker.target) else len(value)
        if len(value) != target_m:
            raise ContractViolationError(
                f"objective length {len(value)} does not match target front ({target_m})"
            )
    return tracker.update(population)


def incomparable_set_bound(spec: BenchmarkSpec) -> int:
    """Upper bound S on the size of a set of pairwise incomparable solutions.

    Bi-objective families admit exactly the front size; the block versions of
    OneMinMax and OneJumpZeroJump admit ``(n' + 1)**(m/2)``, the block version
    of LeadingOnesTrailingZeros ``(n' + 1)**(m - 1)``; the 3-objective
    OneMinMax again matches its front size.
    """
    if spec.is_three_objective:
        return (spec.n // 2 + 1) ** 2
    if spec.m == 2:
        return front_size(spec)
    if spec.family in ("omm", "ojzj"):
        return (spec.n_block + 1) ** (spec.m // 2)
    return (spec.n_block + 1) ** (spec.m - 1)


def min_survival_popsize(spec: BenchmarkSpec) -> int:
    """Smallest population size for which the survival guarantee is asserted.

    Bi-objective: four times the front size.  Block versions: S plus the
    positive-crowding-distance allowance ``2m(n' + 1)``.  3-objective
    OneMinMax: front size plus ``4n + 6``.
    """
    if spec.is_three_objective:
        return (spec.n // 2 + 1) ** 2 + 4 * spec.n + 6
    if spec.m == 2:
        return 4 * front_size(spec)
    return incomparable_set_bound(spec) + 2 * spec.m * (spec.n_block + 1)
