"""Acceptance suite: one test per criterion, with its tolerance pinned here.

Each criterion prints one ``[PASS]``/``[FAIL]`` line (visible with ``pytest
-s``; on failure pytest shows it in the captured output).  The sweep-based
criteria run the full stated protocols, so this module takes several minutes.
The plot criterion for the companion plotting package lives in that package's
own test suite (``plotkit/tests``), driven through the CSV interface.
"""

import statistics

import pytest

from conftest import mann_whitney_exact_oracle, peel_ranks
from test_stats import exhaustive_rank_splits

import numpy as np

from nsgalab import selection
from nsgalab.benchmarks import (
    BenchmarkSpec,
    front_size,
    pareto_front,
    pareto_front_bruteforce,
)
from nsgalab.engine import LemmaChecks
from nsgalab.rng import trial_seed
from nsgalab.runner import TrialConfig, run_trial, sweep
from nsgalab.stats import mann_whitney_one_sided

PARALLELISM = 2


def report(name: str, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, f"{name}: {detail}"


def test_criterion_1_front_oracle_equivalence():
    specs = (
        [BenchmarkSpec.create("omm", n) for n in range(1, 13)]
        + [BenchmarkSpec.create("lotz", n) for n in range(1, 13)]
        + [BenchmarkSpec.create("ojzj", n, k=2) for n in range(4, 13)]
        + [BenchmarkSpec.create("ojzj", n, k=3) for n in range(6, 13)]
        + [
            BenchmarkSpec.create("omm-m", 8, m=4),
            BenchmarkSpec.create("lotz-m", 8, m=4),
            BenchmarkSpec.create("ojzj-m", 8, m=4, k=2),
        ]
    )
    mismatches = [
        spec.name
        for spec in specs
        if set(pareto_front(spec)) != pareto_front_bruteforce(spec)
    ]
    report(
        "criterion-1 front oracle equivalence",
        not mismatches,
        f"{len(specs)} specs, closed form == brute force" if not mismatches else str(mismatches),
    )


def test_criterion_2_sorting_oracle_500_populations():
    rng = np.random.default_rng(9001)
    failures = 0
    for _ in range(500):
        size = int(rng.integers(1, 65))
        m = int(rng.integers(2, 5))
        values = [tuple(int(v) for v in row) for row in rng.integers(0, 12, size=(size, m))]
        if selection.domination_ranks(values) != peel_ranks(values):
            failures += 1
    report(
        "criterion-2 sorting oracle",
        failures == 0,
        f"500 random populations (|R| <= 64, m <= 4), {failures} mismatches",
    )


def test_criterion_3_lemma_assertions_instrumented_runs():
    configs = [
        (BenchmarkSpec.create("omm", 30), 4 * (30 + 1)),
        (BenchmarkSpec.create("ojzj", 20, k=2), 4 * (20 - 2 * 2 + 3)),
    ]
    total_violations = 0
    uncovered = 0
    for ci, (spec, n_pop) in enumerate(configs):
        for ti in range(20):
            checks = LemmaChecks()
            record = run_trial(
                spec, "balanced", n_pop, trial_seed(1301, ci, ti), checks=checks
            )
            total_violations += checks.violations
            uncovered += 0 if record.covered else 1
    report(
        "criterion-3 lemma assertions",
        total_violations == 0 and uncovered == 0,
        f"40 instrumented balanced runs, {total_violations} violations, {uncovered} uncovered",
    )


def test_criterion_4_population_size_robustness(tmp_path):
    plan = [
        TrialConfig(benchmark="omm", n=n, algo=algo, pop_mult=mult)
        for n in (30, 50)
        for algo in ("classic", "balanced")
        for mult in (4.0, 16.0)
    ]
    records = sweep(plan, 50, 1401, str(tmp_path / "omm.csv"), parallelism=PARALLELISM)

    def mean_evals(n, algo, mult):
        cell = [
            r.evaluations
            for r in records
            if r.n == n and r.algo == algo and r.pop_mult == mult
        ]
        assert len(cell) == 50
        return statistics.fmean(cell)

    lines = []
    ok = True
    for n in (30, 50):
        classic_ratio = mean_evals(n, "classic", 16.0) / mean_evals(n, "classic", 4.0)
        balanced_ratio = mean_evals(n, "balanced", 16.0) / mean_evals(n, "balanced", 4.0)
        balanced_16 = [
            r.evaluations
            for r in records
            if r.n == n and r.algo == "balanced" and r.pop_mult == 16.0
        ]
        classic_16 = [
            r.evaluations
            for r in records
            if r.n == n and r.algo == "classic" and r.pop_mult == 16.0
        ]
        p = mann_whitney_one_sided(balanced_16, classic_16).p_value
        checks = [
            (classic_ratio >= 2.0, f"classic 16M/4M {classic_ratio:.2f} >= 2.0"),
            (balanced_ratio <= 1.6, f"balanced 16M/4M {balanced_ratio:.2f} <= 1.6"),
            (p <= 0.05, f"balanced<classic at 16M p={p:.2e} <= 0.05"),
        ]
        for passed, text in checks:
            lines.append(f"n={n}: {'ok' if passed else 'VIOLATED'} {text}")
            ok = ok and passed
    report("criterion-4 population-size robustness", ok, "; ".join(lines))


def test_criterion_5_ojzj_desk_scale(tmp_path):
    plan = [
        TrialConfig(benchmark="ojzj", n=30, k=3, algo=algo, pop_mult=mult, budget=10**8)
        for algo in ("classic", "balanced")
        for mult in (4.0, 8.0)
    ]
    records = sweep(plan, 50, 1501, str(tmp_path / "ojzj.csv"), parallelism=PARALLELISM)
    assert all(r.covered for r in records), "a run exhausted the 1e8 budget"
    balanced_8m = [
        r.evaluations for r in records if r.algo == "balanced" and r.pop_mult == 8.0
    ]
    classic_8m = [
        r.evaluations for r in records if r.algo == "classic" and r.pop_mult == 8.0
    ]
    p = mann_whitney_one_sided(balanced_8m, classic_8m).p_value
    ok = statistics.fmean(balanced_8m) < statistics.fmean(classic_8m) and p <= 0.05
    report(
        "criterion-5 ojzj desk scale",
        ok,
        f"n=30 k=3 N=8M: balanced mean {statistics.fmean(balanced_8m):.0f} vs classic "
        f"mean {statistics.fmean(classic_8m):.0f}, one-sided p={p:.2e} (<= 0.05)",
    )


def test_criterion_6_many_objective_separation():
    spec = BenchmarkSpec.create("omm-m", 40, m=4)
    n_pop = 4 * front_size(spec)
    assert n_pop == 1764

    balanced = [
        run_trial(spec, "balanced", n_pop, trial_seed(1601, 0, ti)) for ti in range(20)
    ]
    balanced_ok = all(r.covered for r in balanced)
    balanced_mean = statistics.fmean(r.evaluations for r in balanced)

    # classic with a 1000-iteration budget (init + 1000 generations)
    classic = [
        run_trial(spec, "classic", n_pop, trial_seed(1601, 1, ti), budget=n_pop * 1001)
        for ti in range(20)
    ]
    classic_median_coverage = statistics.median(r.front_coverage for r in classic)

    ok = balanced_ok and balanced_mean <= 300_000 and classic_median_coverage <= 0.80
    report(
        "criterion-6 many-objective separation",
        ok,
        f"balanced: 20/20 covered={balanced_ok}, mean evals {balanced_mean:.0f} (<= 300000); "
        f"classic median front coverage {classic_median_coverage:.3f} (<= 0.80)",
    )


def test_criterion_7_mann_whitney_correctness():
    mismatches = 0
    cases = 0
    for na in range(1, 6):
        for nb in range(1, 6):
            for a, b in exhaustive_rank_splits(na, nb):
                cases += 1
                if mann_whitney_one_sided(a, b).p_value != mann_whitney_exact_oracle(a, b):
                    mismatches += 1
    example = mann_whitney_one_sided([1, 2, 3], [4, 5, 6]).p_value
    ok = mismatches == 0 and example == 1 / 20
    report(
        "criterion-7 mann-whitney correctness",
        ok,
        f"{cases} exhaustive rank splits (|a|,|b| <= 5), {mismatches} mismatches; "
        f"p([1,2,3] vs [4,5,6]) = {example}",
    )
