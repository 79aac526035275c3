"""Shared brute-force oracles; each stays independent of the code path it checks."""

from __future__ import annotations

import itertools

from nsgalab.core import strictly_dominates


def peel_ranks(values) -> list[int]:
    """Non-dominated sorting by literal iterative peeling (the inductive definition)."""
    remaining = set(range(len(values)))
    ranks = {}
    rank = 0
    while remaining:
        rank += 1
        front = {
            i
            for i in remaining
            if not any(strictly_dominates(values[j], values[i]) for j in remaining)
        }
        assert front, "peeling stalled"
        for i in front:
            ranks[i] = rank
        remaining -= front
    return [ranks[i] for i in range(len(values))]


def max_antichain_size_2d(values) -> int:
    """Largest set of pairwise incomparable bi-objective values, by O(V^2) DP.

    An antichain sorted by rising first objective must fall strictly in the
    second, so the answer is the longest such subsequence.
    """
    vals = sorted(set(map(tuple, values)))
    best = [1] * len(vals)
    for i, (a1, b1) in enumerate(vals):
        for j in range(i):
            a0, b0 = vals[j]
            if a0 < a1 and b0 > b1:
                best[i] = max(best[i], best[j] + 1)
    return max(best, default=0)


def mann_whitney_exact_oracle(a, b) -> float:
    """P[U <= observed] by enumerating every rank arrangement (tie-free samples)."""
    pooled = sorted(list(a) + list(b))
    assert len(set(pooled)) == len(pooled), "oracle requires tie-free samples"
    na = len(a)
    u_obs = sum(1 for x in a for y in b if x > y)
    total = 0
    count_le = 0
    for positions in itertools.combinations(range(len(pooled)), na):
        inside = set(positions)
        u = sum(
            1
            for i in positions
            for j in range(len(pooled))
            if j not in inside and pooled[i] > pooled[j]
        )
        total += 1
        if u <= u_obs:
            count_le += 1
    return count_le / total
