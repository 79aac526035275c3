import pytest

from conftest import max_antichain_size_2d
from nsgalab.benchmarks import (
    BenchmarkSpec,
    all_objective_values,
    evaluate,
    front_size,
    pareto_front,
)
from nsgalab.core import BitString, Individual, ObjectiveVector
from nsgalab.errors import ContractViolationError
from nsgalab.oracle import (
    CoverageTracker,
    incomparable_set_bound,
    min_survival_popsize,
    update_coverage,
)


def test_full_cover_on_omm_n3():
    spec = BenchmarkSpec.create("omm", 3)
    tracker = CoverageTracker.for_spec(spec)
    population = [ObjectiveVector((i, 3 - i)) for i in range(4)]
    update_coverage(tracker, population)
    assert tracker.complete and tracker.fraction == 1.0


def test_empty_intersection_leaves_tracker_unchanged():
    spec = BenchmarkSpec.create("ojzj", 6, k=2)
    tracker = CoverageTracker.for_spec(spec)
    update_coverage(tracker, [ObjectiveVector((1, 3))])  # off-front value
    assert tracker.covered == set() and not tracker.complete


def test_ojzj_outer_points_cover_two_values():
    spec = BenchmarkSpec.create("ojzj", 6, k=2)
    tracker = CoverageTracker.for_spec(spec)
    population = [
        Individual(BitString("111111"), evaluate(spec, BitString("111111"))),
        Individual(BitString("000000"), evaluate(spec, BitString("000000"))),
    ]
    update_coverage(tracker, population)
    assert tracker.covered == {(8, 2), (2, 8)}
    assert not tracker.complete


def test_update_is_idempotent():
    spec = BenchmarkSpec.create("omm", 4)
    tracker = CoverageTracker.for_spec(spec)
    population = [ObjectiveVector((2, 2)), ObjectiveVector((1, 3))]
    update_coverage(tracker, population)
    snapshot = set(tracker.covered)
    update_coverage(tracker, population)
    assert tracker.covered == snapshot


def test_update_rejects_wrong_arity():
    tracker = CoverageTracker.for_spec(BenchmarkSpec.create("omm", 4))
    with pytest.raises(ContractViolationError):
        update_coverage(tracker, [ObjectiveVector((1, 2, 3))])


def test_incomparable_set_bound_examples():
    assert incomparable_set_bound(BenchmarkSpec.create("omm-m", 8, m=4)) == 25
    assert incomparable_set_bound(BenchmarkSpec.create("lotz-m", 8, m=4)) == 125
    assert incomparable_set_bound(BenchmarkSpec.create("omm", 10)) == 11
    assert incomparable_set_bound(BenchmarkSpec.create("ojzj", 10, k=2)) == 9
    assert incomparable_set_bound(BenchmarkSpec.create("ojzj-m", 8, m=4, k=2)) == 25
    assert incomparable_set_bound(BenchmarkSpec.create("omm3", 8)) == 25


@pytest.mark.parametrize("name,n", [("omm", 8), ("omm", 12), ("lotz", 8), ("lotz", 12)])
def test_bound_matches_bruteforce_max_antichain(name, n):
    spec = BenchmarkSpec.create(name, n)
    achievable = all_objective_values(spec)
    assert max_antichain_size_2d(achievable) == incomparable_set_bound(spec)


def test_ojzj_bound_matches_bruteforce_max_antichain():
    spec = BenchmarkSpec.create("ojzj", 10, k=2)
    achievable = all_objective_values(spec)
    assert max_antichain_size_2d(achievable) == incomparable_set_bound(spec)


def test_min_survival_popsize():
    assert min_survival_popsize(BenchmarkSpec.create("omm", 30)) == 4 * 31
    assert min_survival_popsize(BenchmarkSpec.create("ojzj", 20, k=2)) == 4 * (20 - 4 + 3)
    # block version: S + 2m(n' + 1) = S + 4n + 2m
    spec = BenchmarkSpec.create("omm-m", 40, m=4)
    assert min_survival_popsize(spec) == 441 + 4 * 40 + 2 * 4
    # 3-objective: M + 4n + 6
    assert min_survival_popsize(BenchmarkSpec.create("omm3", 8)) == 25 + 4 * 8 + 6


def test_front_size_consistency_with_enumeration():
    for spec in (BenchmarkSpec.create("omm", 10), BenchmarkSpec.create("ojzj", 10, k=3)):
        assert front_size(spec) == len(pareto_front(spec))
