"""One-sided Mann-Whitney U test and per-configuration CSV summaries.

The U statistic is computed by the midrank method, ``U = sum over a-values of
(#b-values below + half the ties)``.  The p-value for the alternative "a is
stochastically smaller than b" is the lower tail ``P[U <= u_observed]``:
exact (by the standard count recurrence) for tie-free samples with at most 20
pooled values, otherwise a normal approximation with tie correction and
continuity correction.
"""

from __future__ import annotations

import csv
import math
import statistics
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import ContractViolationError, MalformedCSVError
from .runner import CSV_COLUMNS

EXACT_MAX_POOLED = 20


@dataclass(frozen=True)
class StatResult:
    group_a: str
    group_b: str
    u_statistic: float
    p_value: float
    method: str  # "exact" | "normal_approx"


def _midranks(pooled: Sequence[float]) -> list[float]:
    order = sorted(range(len(pooled)), key=lambda i: pooled[i])
    ranks = [0.0] * len(pooled)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and pooled[order[j + 1]] == pooled[order[i]]:
            j += 1
        midrank = (i + j) / 2 + 1
        for pos in range(i, j + 1):
            ranks[order[pos]] = midrank
        i = j + 1
    return ranks


@lru_cache(maxsize=None)
def _count_u(u: int, na: int, nb: int) -> int:
    """Number of rank arrangements of (na, nb) tie-free samples with U == u."""
    if u < 0:
        return 0
    if na == 0 or nb == 0:
        return 1 if u == 0 else 0
    # largest pooled value is from a (contributes nb pairs) or from b
    return _count_u(u - nb, na - 1, nb) + _count_u(u, na, nb - 1)


def _normal_cdf(z: float) -> float:
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def mann_whitney_one_sided(
    a: Sequence[float],
    b: Sequence[float],
    group_a: str = "a",
    group_b: str = "b",
) -> StatResult:
    """Test the one-sided alternative that ``a`` values are smaller than ``b``."""
    na, nb = len(a), len(b)
    if na < 1 or nb < 1:
        raise ContractViolationError("both samples must be non-empty")
    pooled = list(a) + list(b)
    ranks = _midranks(pooled)
    rank_sum_a = sum(ranks[:na])
    u_stat = rank_sum_a - na * (na + 1) / 2

    tie_free = len(set(pooled)) == len(pooled)
    if tie_free and na + nb <= EXACT_MAX_POOLED:
        u_int = int(round(u_stat))
        total = math.comb(na + nb, na)
        below = sum(_count_u(u, na, nb) for u in range(u_int + 1))
        return StatResult(group_a, group_b, u_stat, below / total, "exact")

    n = na + nb
    mean = na * nb / 2
    tie_term = sum(t**3 - t for t in Counter(pooled).values())
    variance = na * nb / 12 * ((n + 1) - tie_term / (n * (n - 1)))
    if variance <= 0:
        return StatResult(group_a, group_b, u_stat, 1.0, "normal_approx")
    z = (u_stat - mean + 0.5) / math.sqrt(variance)
    return StatResult(group_a, group_b, u_stat, _normal_cdf(z), "normal_approx")


SUMMARY_HEADER = (
    "benchmark,n,m,k,N,pop_mult,"
    "classic_runs,classic_covered,classic_mean,classic_median,classic_stddev,"
    "balanced_runs,balanced_covered,balanced_mean,balanced_median,balanced_stddev,"
    "p_value"
)


def _parse_rows(in_path: str) -> list[dict]:
    rows = []
    with open(in_path, newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames != CSV_COLUMNS:
            raise MalformedCSVError(
                f"line 1: expected header {','.join(CSV_COLUMNS)!r}, got {reader.fieldnames}"
            )
        for row in reader:
            lineno = reader.line_num
            try:
                rows.append(
                    {
                        "benchmark": row["benchmark"],
                        "n": int(row["n"]),
                        "m": int(row["m"]),
                        "k": row["k"],
                        "algo": row["algo"],
                        "N": int(row["N"]),
                        "pop_mult": row["pop_mult"],
                        "seed": int(row["seed"]),
                        "iterations": int(row["iterations"]),
                        "evaluations": int(row["evaluations"]),
                        "covered": row["covered"] == "true",
                    }
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise MalformedCSVError(f"line {lineno}: {exc}") from exc
    return rows


def _stat_columns(evals: list[int], covered: list[bool]) -> list[str]:
    if not evals:
        return ["0", "0", "", "", ""]
    return [
        str(len(evals)),
        str(sum(covered)),
        repr(statistics.fmean(evals)),
        repr(float(statistics.median(evals))),
        repr(statistics.stdev(evals)) if len(evals) >= 2 else "",
    ]


def summarize(in_path: str, out_path: str) -> list[list[str]]:
    """Per-configuration mean/median/stddev plus balanced-vs-classic p-values.

    One output row per (benchmark, n, m, k, N, pop_mult); the p-value column
    holds the one-sided Mann-Whitney p for "balanced evaluations are lower
    than classic" and is empty unless both algorithms are present.
    """
    rows = _parse_rows(in_path)
    groups: dict[tuple, dict[str, list[dict]]] = {}
    for row in rows:
        key = (row["benchmark"], row["n"], row["m"], row["k"], row["N"], row["pop_mult"])
        groups.setdefault(key, {}).setdefault(row["algo"], []).append(row)

    out_rows: list[list[str]] = []
    for key in sorted(groups, key=lambda k: tuple(map(str, k))):
        by_algo = groups[key]
        line = [str(key[0]), str(key[1]), str(key[2]), key[3], str(key[4]), key[5]]
        for algo in ("classic", "balanced"):
            algo_rows = by_algo.get(algo, [])
            line.extend(
                _stat_columns(
                    [r["evaluations"] for r in algo_rows],
                    [r["covered"] for r in algo_rows],
                )
            )
        if "classic" in by_algo and "balanced" in by_algo:
            result = mann_whitney_one_sided(
                [r["evaluations"] for r in by_algo["balanced"]],
                [r["evaluations"] for r in by_algo["classic"]],
                group_a="balanced",
                group_b="classic",
            )
            line.append(repr(result.p_value))
        else:
            line.append("")
        out_rows.append(line)

    with open(out_path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(SUMMARY_HEADER.split(","))
        writer.writerows(out_rows)
    return out_rows
