"""Instrumented runs: the selection lemmas hold generation by generation."""

import pytest

from nsgalab.benchmarks import BenchmarkSpec, front_size
from nsgalab.engine import LemmaChecks
from nsgalab.errors import InvariantViolationError
from nsgalab.runner import run_trial


def instrumented(spec, algo, n_pop, seed):
    checks = LemmaChecks()
    record = run_trial(spec, algo, n_pop, seed, checks=checks)
    return record, checks


@pytest.mark.parametrize("algo", ["balanced", "classic"])
def test_omm_instrumented_runs_clean(algo):
    spec = BenchmarkSpec.create("omm", 20)
    n_pop = 4 * front_size(spec)
    for seed in (1, 2, 3):
        record, checks = instrumented(spec, algo, n_pop, seed)
        assert record.covered and checks.violations == 0


def test_ojzj_instrumented_run_clean():
    spec = BenchmarkSpec.create("ojzj", 14, k=2)
    n_pop = 4 * front_size(spec)
    for seed in (4, 5):
        record, checks = instrumented(spec, "balanced", n_pop, seed)
        assert record.covered and checks.violations == 0


def test_lotz_monotonicity_checked_in_instrumented_run():
    spec = BenchmarkSpec.create("lotz", 16)
    n_pop = 4 * front_size(spec)
    record, checks = instrumented(spec, "balanced", n_pop, 6)
    assert record.covered and checks.violations == 0


def test_block_version_instrumented_run_clean():
    spec = BenchmarkSpec.create("omm-m", 16, m=4)
    # survival threshold for blocks: S + 2m(n' + 1)
    from nsgalab.oracle import min_survival_popsize

    n_pop = min_survival_popsize(spec)
    record, checks = instrumented(spec, "balanced", n_pop, 7)
    assert record.covered and checks.violations == 0


def test_violation_raises_and_counts():
    checks = LemmaChecks()
    with pytest.raises(InvariantViolationError):
        checks._fail(3, "synthetic violation")
    assert checks.violations == 1
