"""Seeded trials, configuration sweeps, and the results CSV.

A trial runs one algorithm on one benchmark until the population's objective
values have covered the Pareto front, or until the evaluation budget (default
``10_000 * N``) is exhausted.  Budget exhaustion is recorded as non-coverage,
never an error.  Sweeps derive per-trial seeds from a base seed with a
SplitMix64 hash of (base seed, config index, trial index), run trials
(optionally across processes), and write one CSV row per trial, stably sorted
by configuration and seed so reruns are byte-identical.
"""

from __future__ import annotations

import concurrent.futures
import csv
from dataclasses import dataclass
from typing import Sequence

from .benchmarks import BenchmarkSpec, front_size
from .engine import LemmaChecks, run_trial_python
from .errors import ConfigurationError
from .rng import RngStream, trial_seed

CSV_HEADER = "benchmark,n,m,k,algo,N,pop_mult,seed,iterations,evaluations,covered"
CSV_COLUMNS = CSV_HEADER.split(",")

DEFAULT_BUDGET_PER_MEMBER = 10_000

_KERNEL_MAX_M = 4
_KERNEL_MAX_N = 8192

_FAMILY_CODES = {"omm": 0, "lotz": 1, "ojzj": 2}


@dataclass(frozen=True)
class RunRecord:
    """One trial's configuration, seed, and outcome.

    ``evaluations == N * (iterations + 1)``: initialization evaluates the N
    initial individuals, each later iteration the N offspring.
    ``front_coverage`` (not part of the CSV schema) is the largest fraction
    of the Pareto front any single population covered simultaneously; 1.0
    exactly when ``covered``.
    """

    benchmark: str
    n: int
    m: int
    k: int | None
    algo: str
    N: int
    pop_mult: float | None
    seed: int
    iterations: int
    evaluations: int
    covered: bool
    front_coverage: float

    def csv_row(self) -> list[str]:
        return [
            self.benchmark,
            str(self.n),
            str(self.m),
            "" if self.k is None else str(self.k),
            self.algo,
            str(self.N),
            "" if self.pop_mult is None else repr(self.pop_mult),
            str(self.seed),
            str(self.iterations),
            str(self.evaluations),
            "true" if self.covered else "false",
        ]


def resolve_popsize(spec: BenchmarkSpec, pop_size: int | None, pop_mult: float | None) -> int:
    """Population size from an explicit N or a multiplier of the front size."""
    if (pop_size is None) == (pop_mult is None):
        raise ConfigurationError("exactly one of pop_size / pop_mult must be given")
    if pop_size is not None:
        n_pop = int(pop_size)
    else:
        n_pop = int(round(float(pop_mult) * front_size(spec)))
    if n_pop < 1:
        raise ConfigurationError(f"population size must be >= 1, got {n_pop}")
    return n_pop


def _kernel_supports(spec: BenchmarkSpec) -> bool:
    return spec.m <= _KERNEL_MAX_M and spec.n <= _KERNEL_MAX_N


def run_trial(
    spec: BenchmarkSpec,
    algo: str,
    n_pop: int,
    seed: int,
    budget: int | None = None,
    backend: str = "auto",
    checks: LemmaChecks | None = None,
    pop_mult: float | None = None,
) -> RunRecord:
    """Run one seeded trial and return its record.

    ``backend`` is ``auto`` (compiled kernel when available and applicable),
    ``kernel``, or ``python``.  Instrumented runs (``checks``) always use the
    Python engine.  Identical (spec, algo, N, seed) yield identical records
    on every backend.
    """
    if algo not in ("classic", "balanced"):
        raise ConfigurationError(f"unknown algorithm {algo!r}")
    if n_pop < 1:
        raise ConfigurationError(f"population size must be >= 1, got {n_pop}")
    if budget is None:
        budget = DEFAULT_BUDGET_PER_MEMBER * n_pop
    if budget < n_pop:
        raise ConfigurationError(f"budget {budget} cannot cover initialization ({n_pop} evaluations)")

    from . import HAVE_KERNEL, default_backend

    if backend == "auto":
        backend = default_backend()
        if backend == "kernel" and not _kernel_supports(spec):
            backend = "python"
    if checks is not None:
        backend = "python"
    if backend == "kernel":
        if not HAVE_KERNEL:
            raise ConfigurationError("compiled kernel is not available")
        if not _kernel_supports(spec):
            raise ConfigurationError("kernel supports only m <= 4 and n <= 8192")
        from . import _kernel

        rng = RngStream(seed)
        iterations, evaluations, covered, best_covered, _ = _kernel.run_trial_kernel(
            rng.bit_generator,
            _FAMILY_CODES[spec.family],
            1 if spec.is_three_objective else 0,
            spec.n,
            spec.m,
            spec.blocks,
            spec.n_block,
            spec.k or 0,
            n_pop,
            algo == "balanced",
            budget,
            front_size(spec),
        )
        coverage = best_covered / front_size(spec)
    elif backend == "python":
        result = run_trial_python(spec, algo, n_pop, seed, budget, checks)
        iterations, evaluations, covered = result.iterations, result.evaluations, result.covered
        coverage = result.best_covered / result.front_total
    else:
        raise ConfigurationError(f"unknown backend {backend!r}")

    return RunRecord(
        benchmark=spec.name,
        n=spec.n,
        m=spec.m,
        k=spec.k,
        algo=algo,
        N=n_pop,
        pop_mult=pop_mult,
        seed=seed,
        iterations=iterations,
        evaluations=evaluations,
        covered=covered,
        front_coverage=coverage,
    )


@dataclass(frozen=True)
class TrialConfig:
    """One sweep cell: benchmark + algorithm + population size."""

    benchmark: str
    n: int
    algo: str
    m: int | None = None
    k: int | None = None
    pop_size: int | None = None
    pop_mult: float | None = None
    budget: int | None = None

    def spec(self) -> BenchmarkSpec:
        return BenchmarkSpec.create(self.benchmark, self.n, self.m, self.k)


def _run_sweep_trial(args: tuple) -> RunRecord:
    config, seed, backend = args
    spec = config.spec()
    n_pop = resolve_popsize(spec, config.pop_size, config.pop_mult)
    return run_trial(
        spec,
        config.algo,
        n_pop,
        seed,
        budget=config.budget,
        backend=backend,
        pop_mult=config.pop_mult,
    )


def sweep(
    plan: Sequence[TrialConfig],
    runs_per_config: int,
    base_seed: int,
    out_path: str,
    parallelism: int = 1,
    backend: str = "auto",
) -> list[RunRecord]:
    """Run every config ``runs_per_config`` times and write the results CSV.

    Rows are flushed as trials finish, then the file is rewritten stably
    sorted by (configuration columns, seed); rerunning an identical sweep
    produces a byte-identical file.
    """
    if not plan:
        raise ConfigurationError("sweep plan is empty")
    for config in plan:  # validate every config before any work
        spec = config.spec()
        resolve_popsize(spec, config.pop_size, config.pop_mult)

    jobs = [
        (config, trial_seed(base_seed, ci, ti), backend)
        for ci, config in enumerate(plan)
        for ti in range(runs_per_config)
    ]

    records: list[RunRecord] = []
    with open(out_path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_COLUMNS)
        if parallelism <= 1:
            for job in jobs:
                record = _run_sweep_trial(job)
                records.append(record)
                writer.writerow(record.csv_row())
                handle.flush()
        else:
            with concurrent.futures.ProcessPoolExecutor(max_workers=parallelism) as pool:
                for record in pool.map(_run_sweep_trial, jobs, chunksize=1):
                    records.append(record)
                    writer.writerow(record.csv_row())
                    handle.flush()

    records.sort(key=lambda r: (r.csv_row()[:7], r.seed))
    with open(out_path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_COLUMNS)
        for record in records:
            writer.writerow(record.csv_row())
    return records
