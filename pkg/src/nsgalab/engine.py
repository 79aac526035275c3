"""Pure-Python run engine (numpy-vectorized) and instrumented invariant checks.

This is the fallback backend when the compiled kernel is unavailable, and the
only backend when a run is instrumented with :class:`LemmaChecks`.  It draws
from the trial's :class:`RngStream` in exactly the order the compiled kernel
does: per generation, ``N`` blocks of ``1 + n`` raw words (parent index, then
one Bernoulli per bit position), then whatever the survivor selection samples.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import selection
from .benchmarks import BenchmarkSpec, evaluate_matrix, front_size, front_value_index
from .errors import InvariantViolationError
from .oracle import min_survival_popsize
from .rng import RngStream

_TWO_NEG_53 = 2.0**-53


@dataclass
class LemmaChecks:
    """Per-generation runtime assertions from the selection lemmas.

    * ``max_positive_cd``: per objective value on the critical front, at most
      ``2m`` members have positive crowding distance.
    * ``retention``: with ``d`` slots filled from a critical front holding
      ``S`` distinct values, the balanced tie-breaker keeps at least
      ``min(max(d // S - 2m, 0), available)`` members per value.
    * ``survival``: every objective value of a rank-1 member of the combined
      population survives into the next population (asserted only when the
      population size meets the survival threshold for the benchmark).
    * ``lotz_monotone``: on bi-objective LeadingOnesTrailingZeros, the maximum
      first objective in the population never decreases.
    """

    max_positive_cd: bool = True
    retention: bool = True
    survival: bool = True
    lotz_monotone: bool = True
    violations: int = 0

    def _fail(self, generation: int, message: str) -> None:
        self.violations += 1
        raise InvariantViolationError(f"generation {generation}: {message}")

    def verify(
        self,
        spec: BenchmarkSpec,
        tiebreak: str,
        n_pop: int,
        generation: int,
        values: list[tuple],
        detail: selection.SelectionDetail,
        prev_max_f1: int | None,
        new_max_f1: int,
    ) -> None:
        m = spec.m
        critical = detail.critical_front

        if self.max_positive_cd and detail.cd_inf is not None:
            positive: Counter = Counter()
            for pos, idx in enumerate(critical):
                if detail.cd_inf[pos] or detail.cd_nums[pos] > 0:
                    positive[values[idx]] += 1
            for value, count in positive.items():
                if count > 2 * m:
                    self._fail(
                        generation,
                        f"{count} members with positive CD share value {value} (allowed {2 * m})",
                    )

        if self.retention and tiebreak == "balanced":
            available = Counter(values[i] for i in critical)
            critical_set = set(critical)
            kept = Counter(values[i] for i in detail.kept if i in critical_set)
            d = detail.slots_from_critical_front
            distinct = len(available)
            floor_quota = max(d // distinct - 2 * m, 0)
            for value, avail in available.items():
                required = min(floor_quota, avail)
                if kept[value] < required:
                    self._fail(
                        generation,
                        f"kept {kept[value]} of value {value}, required {required} "
                        f"(d={d}, S={distinct}, available={avail})",
                    )

        if self.survival and n_pop >= min_survival_popsize(spec):
            kept_values = {values[i] for i in detail.kept}
            rank1_values = {values[i] for i in detail.fronts[0]}
            lost = rank1_values - kept_values
            if lost:
                self._fail(generation, f"rank-1 objective values lost: {sorted(lost)[:4]}")

        if (
            self.lotz_monotone
            and spec.name == "lotz"
            and n_pop >= 4 * (spec.n + 1)
            and prev_max_f1 is not None
            and new_max_f1 < prev_max_f1
        ):
            self._fail(generation, f"max leading-ones dropped {prev_max_f1} -> {new_max_f1}")


@dataclass
class EngineResult:
    iterations: int
    evaluations: int
    covered: bool
    best_covered: int
    front_total: int
    final_bits: np.ndarray


class PythonEngine:
    """Array-based generational loop; one instance per trial.

    A run terminates when the *current* population's objective values cover
    the whole Pareto front; ``best_covered`` is the largest number of front
    values any single population held simultaneously (coverage can regress
    when the population size is too small for the survival guarantee).
    """

    def __init__(
        self,
        spec: BenchmarkSpec,
        tiebreak: str,
        n_pop: int,
        rng: RngStream,
        checks: LemmaChecks | None = None,
    ):
        self.spec = spec
        self.tiebreak = tiebreak
        self.n_pop = n_pop
        self.rng = rng
        self.checks = checks
        self.flip_p = 1.0 / spec.n
        self.front_total = front_size(spec)
        self._seen_in_gen = np.full(self.front_total, -1, dtype=np.int64)
        self.generation = 0
        self.current_covered = 0
        self.best_covered = 0
        init_units = (rng.raw(n_pop * spec.n).reshape(n_pop, spec.n) >> 11) * _TWO_NEG_53
        self.bits = (init_units < 0.5).astype(np.uint8)
        self.objs = evaluate_matrix(spec, self.bits)
        self._count_population_coverage(self.objs)

    def _count_population_coverage(self, objs: np.ndarray) -> None:
        count = 0
        for row in objs.tolist():
            idx = front_value_index(self.spec, tuple(row))
            if idx >= 0 and self._seen_in_gen[idx] != self.generation:
                self._seen_in_gen[idx] = self.generation
                count += 1
        self.current_covered = count
        if count > self.best_covered:
            self.best_covered = count

    @property
    def complete(self) -> bool:
        return self.current_covered == self.front_total

    def step(self) -> None:
        n, n_pop = self.spec.n, self.n_pop
        raw = self.rng.raw(n_pop * (1 + n)).reshape(n_pop, 1 + n)
        units = (raw >> 11) * _TWO_NEG_53
        parents = (units[:, 0] * n_pop).astype(np.intp)
        flips = (units[:, 1:] < self.flip_p).astype(np.uint8)
        off_bits = np.bitwise_xor(self.bits[parents], flips)
        off_objs = evaluate_matrix(self.spec, off_bits)

        all_bits = np.concatenate([self.bits, off_bits])
        all_objs = np.concatenate([self.objs, off_objs])
        values = [tuple(row) for row in all_objs.tolist()]
        detail = selection.select_population(
            values, n_pop, self.tiebreak, self.rng, compute_cd_always=self.checks is not None
        )

        if self.checks is not None:
            prev_max_f1 = int(self.objs[:, 0].max())
            new_max_f1 = max(values[i][0] for i in detail.kept)
            self.checks.verify(
                self.spec,
                self.tiebreak,
                n_pop,
                self.generation + 1,
                values,
                detail,
                prev_max_f1,
                new_max_f1,
            )

        keep = np.asarray(detail.kept, dtype=np.intp)
        self.bits = all_bits[keep]
        self.objs = all_objs[keep]
        self.generation += 1
        self._count_population_coverage(self.objs)


def run_trial_python(
    spec: BenchmarkSpec,
    tiebreak: str,
    n_pop: int,
    seed: int,
    budget: int,
    checks: LemmaChecks | None = None,
) -> EngineResult:
    """Run one trial to coverage or budget exhaustion on the Python engine."""
    rng = RngStream(seed)
    engine = PythonEngine(spec, tiebreak, n_pop, rng, checks)
    evaluations = n_pop
    iterations = 0
    while not engine.complete and evaluations + n_pop <= budget:
        iterations += 1
        engine.step()
        evaluations += n_pop
    return EngineResult(
        iterations=iterations,
        evaluations=evaluations,
        covered=engine.complete,
        best_covered=engine.best_covered,
        front_total=engine.front_total,
        final_bits=engine.bits.copy(),
    )
