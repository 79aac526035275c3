"""Benchmark the compiled kernel against the pure-Python engine.

Runs identical seeded trials on both backends, checks that the results agree,
and reports wall-clock time and evaluations per second:

    python -m nsgalab.backend_bench
"""

from __future__ import annotations

import time

from . import HAVE_KERNEL
from .benchmarks import BenchmarkSpec, front_size
from .runner import run_trial

CASES = [
    ("omm", dict(n=30), "balanced", 4.0, 3),
    ("omm", dict(n=30), "classic", 4.0, 3),
    ("ojzj", dict(n=24, k=2), "balanced", 4.0, 3),
    ("lotz", dict(n=24), "balanced", 4.0, 3),
    ("omm-m", dict(n=24, m=4), "balanced", 4.0, 3),
]


def _time_backend(spec, algo, n_pop, seeds, backend):
    start = time.perf_counter()
    total_evals = 0
    records = []
    for seed in seeds:
        record = run_trial(spec, algo, n_pop, seed, backend=backend)
        total_evals += record.evaluations
        records.append((record.iterations, record.evaluations, record.covered))
    elapsed = time.perf_counter() - start
    return elapsed, total_evals, records


def main() -> int:
    print(f"{'case':<34}{'python':>12}{'kernel':>12}{'speedup':>9}  evals/s (kernel)")
    for name, params, algo, mult, runs in CASES:
        spec = BenchmarkSpec.create(name, **params)
        n_pop = int(mult * front_size(spec))
        seeds = [1000 + i for i in range(runs)]
        py_time, py_evals, py_records = _time_backend(spec, algo, n_pop, seeds, "python")
        if HAVE_KERNEL:
            k_time, k_evals, k_records = _time_backend(spec, algo, n_pop, seeds, "kernel")
            assert py_records == k_records, f"backend mismatch on {name}"
            speedup = py_time / k_time if k_time > 0 else float("inf")
            rate = k_evals / k_time if k_time > 0 else float("inf")
            print(
                f"{name} {algo} N={n_pop} x{runs:<12}{py_time:>11.3f}s{k_time:>11.3f}s"
                f"{speedup:>8.1f}x  {rate:,.0f}"
            )
        else:
            print(f"{name} {algo} N={n_pop} x{runs:<12}{py_time:>11.3f}s{'-':>12}{'-':>9}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
