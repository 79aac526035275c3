"""Classic and balanced-tie-breaking NSGA-II with a seeded experiment harness.

The generational hot loop has two interchangeable backends: a compiled Cython
kernel (``nsgalab._kernel``) and a pure-Python/numpy engine.  Both consume the
same Philox stream identically, so a trial's result does not depend on the
backend.  Selection order at import: the ``NSGALAB_BACKEND`` environment
variable (``kernel`` / ``python``) wins; otherwise the kernel is used when it
imported successfully and the configuration supports it.
"""

from __future__ import annotations

import os

try:
    from . import _kernel

    HAVE_KERNEL = True
except ImportError:  # pragma: no cover - depends on the build
    _kernel = None
    HAVE_KERNEL = False

from .benchmarks import (
    BENCHMARK_NAMES,
    BenchmarkSpec,
    ParetoFront,
    evaluate,
    evaluate_matrix,
    front_size,
    pareto_front,
    pareto_front_bruteforce,
)
from .core import (
    BitString,
    DominationRelation,
    Individual,
    ObjectiveVector,
    compare,
    mutate,
    uniform_bitstring,
)
from .engine import LemmaChecks
from .errors import (
    ConfigurationError,
    ContractViolationError,
    EnumerationBudgetError,
    InvariantViolationError,
    MalformedCSVError,
)
from .nsga2 import (
    RankedPopulation,
    RationalCD,
    SelectionOutcome,
    critical_cd_index,
    critical_rank,
    crowding_distance,
    nondominated_sort,
    select_balanced,
    select_random,
    step,
)
from .oracle import CoverageTracker, incomparable_set_bound, min_survival_popsize, update_coverage
from .rng import RngStream, trial_seed
from .runner import CSV_HEADER, RunRecord, TrialConfig, run_trial, sweep
from .stats import StatResult, mann_whitney_one_sided, summarize

__version__ = "0.1.0"


def default_backend() -> str:
    """Backend used for uninstrumented runs: ``kernel`` or ``python``."""
    forced = os.environ.get("NSGALAB_BACKEND", "").strip().lower()
    if forced in ("kernel", "python"):
        return forced
    return "kernel" if HAVE_KERNEL else "python"
