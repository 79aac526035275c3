"""Command-line harness.

``nsgalab run`` executes seeded trials of one configuration and writes the
results CSV; ``nsgalab summarize`` aggregates a results CSV into
per-configuration statistics and significance tests.  Exit codes: 0 success,
1 configuration error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import sys

from .errors import ConfigurationError, ContractViolationError, MalformedCSVError
from .runner import TrialConfig, sweep
from .stats import summarize


class _CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); config errors are exit 1
        raise _CliError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nsgalab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run seeded trials of one configuration")
    run.add_argument("--benchmark", required=True,
                     help="omm | lotz | ojzj | omm-m | lotz-m | ojzj-m | omm3")
    run.add_argument("--n", type=int, required=True, help="problem size")
    run.add_argument("--k", type=int, default=None, help="gap parameter (ojzj families)")
    run.add_argument("--m", type=int, default=None, help="objective count (-m families)")
    run.add_argument("--algo", required=True, choices=("classic", "balanced"))
    size = run.add_mutually_exclusive_group(required=True)
    size.add_argument("--pop-size", type=int, default=None, help="population size N")
    size.add_argument("--pop-mult", type=float, default=None,
                      help="N as a multiple of the Pareto front size")
    run.add_argument("--runs", type=int, required=True, help="number of trials")
    run.add_argument("--seed", type=int, required=True, help="base seed (u64)")
    run.add_argument("--budget", type=int, default=None,
                     help="evaluation budget per trial (default 10000 * N)")
    run.add_argument("--parallelism", type=int, default=1, help="concurrent trials")
    run.add_argument("--out", required=True, help="output CSV path")

    summ = sub.add_parser("summarize", help="aggregate a results CSV")
    summ.add_argument("--in", dest="in_path", required=True, help="results CSV")
    summ.add_argument("--out", required=True, help="summary CSV path")
    return parser


def _cmd_run(args) -> int:
    if args.runs < 1:
        raise ConfigurationError(f"--runs must be >= 1, got {args.runs}")
    if not 0 <= args.seed < 2**64:
        raise ConfigurationError("--seed must be an unsigned 64-bit integer")
    config = TrialConfig(
        benchmark=args.benchmark,
        n=args.n,
        algo=args.algo,
        m=args.m,
        k=args.k,
        pop_size=args.pop_size,
        pop_mult=args.pop_mult,
        budget=args.budget,
    )
    records = sweep([config], args.runs, args.seed, args.out, parallelism=args.parallelism)
    covered = sum(r.covered for r in records)
    print(f"wrote {len(records)} trials to {args.out} ({covered} covered)")
    return 0


def _cmd_summarize(args) -> int:
    rows = summarize(args.in_path, args.out)
    print(f"wrote {len(rows)} summary rows to {args.out}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_summarize(args)
    except (_CliError, ConfigurationError, ContractViolationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, MalformedCSVError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
