"""Survivor-selection core shared by the Individual-level API and the run engine.

Everything here operates on plain objective-value tuples and integer indices,
so the same logic backs both surfaces (and defines the behavior the compiled
kernel must replicate draw-for-draw).

Determinism conventions, mirrored exactly by the kernel:

* Fronts list member indices in ascending order; the next population is
  assembled as earlier fronts (rank-major), then kept crowding-distance
  groups (CD-descending, index-ascending within a group), then the sampled
  tail ``W`` in draw order.
* Crowding-distance sorts are stable on (objective value, position in front).
* CD values are exact rationals over the common denominator ``prod`` of the
  nonzero per-objective ranges; groups are formed by exact equality.
* A selection step that must take a whole set (``s == len(pool)``) takes it
  in place and consumes no randomness; so does ``s == 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import ContractViolationError
from .rng import RngStream, sample_without_replacement, shuffled

Value = tuple


def _ranks_two_objectives(uniques: list[Value]) -> dict[Value, int]:
    """Sweep ranking for m == 2: process values by (f1 desc, f2 desc).

    Among already-processed values, ``p`` strictly dominates the current value
    ``(a, b)`` iff ``p[1] >= b``; the maximum f2 per rank is non-increasing in
    the rank, so the deepest dominating rank is found by binary search.
    """
    order = sorted(uniques, reverse=True)
    max_f2_by_rank: list[int] = []  # max_f2_by_rank[r-1] = max f2 among rank-r values
    ranks: dict[Value, int] = {}
    for a, b in order:
        # rightmost rank whose max f2 is >= b (list is non-increasing)
        lo, hi = 0, len(max_f2_by_rank)
        while lo < hi:
            mid = (lo + hi) // 2
            if max_f2_by_rank[mid] >= b:
                lo = mid + 1
            else:
                hi = mid
        rank = lo + 1
        ranks[(a, b)] = rank
        if rank > len(max_f2_by_rank):
            max_f2_by_rank.append(b)
        else:
            max_f2_by_rank[rank - 1] = b
    return ranks


def _ranks_general(uniques: list[Value]) -> dict[Value, int]:
    """Peeling ranks via rank(v) = 1 + max rank of strict dominators of v.

    A strict dominator has a strictly larger component sum, so scanning values
    in descending-sum order only ever looks at already-ranked candidates.
    """
    decorated = sorted(((sum(v), v) for v in uniques), reverse=True)
    ranks: dict[Value, int] = {}
    for i, (s, v) in enumerate(decorated):
        best = 0
        for j in range(i):
            sj, vj = decorated[j]
            if sj <= s:
                break
            if all(a >= b for a, b in zip(vj, v)) and ranks[vj] > best:
                best = ranks[vj]
        ranks[v] = best + 1
    return ranks


def domination_ranks(values: Sequence[Value]) -> list[int]:
    """Non-dominated-sorting rank (1-based) of every member of ``values``."""
    if len(values) < 1:
        raise ContractViolationError("cannot rank an empty population")
    uniques = list(set(values))
    if len(values[0]) == 2:
        by_value = _ranks_two_objectives(uniques)
    else:
        by_value = _ranks_general(uniques)
    return [by_value[v] for v in values]


def fronts_from_ranks(ranks: Sequence[int]) -> list[list[int]]:
    """Partition member indices by rank; indices ascend within each front."""
    fronts: list[list[int]] = [[] for _ in range(max(ranks))]
    for i, r in enumerate(ranks):
        fronts[r - 1].append(i)
    return fronts


def critical_rank_index(front_sizes: Sequence[int], target: int) -> int:
    """Minimal 1-based j* with cumulative front size >= target."""
    if sum(front_sizes) < target:
        raise ContractViolationError(
            f"population of {sum(front_sizes)} cannot fill {target} slots"
        )
    cum = 0
    for j, size in enumerate(front_sizes):
        cum += size
        if cum >= target:
            return j + 1
    raise AssertionError("unreachable")


def crowding_numerators(
    values: Sequence[Value], front: Sequence[int]
) -> tuple[list[bool], list[int], int]:
    """Exact crowding distances of a front.

    Returns per-member infinity flags and numerators over one common
    denominator (the product of the nonzero per-objective value ranges).
    Per objective, members sort ascending by value with ties kept in front
    order; the two positional extremes are infinite, interior members add
    ``(next - prev) / range``, and a zero-range objective contributes 0.
    """
    a = len(front)
    if a < 1:
        raise ContractViolationError("crowding distance of an empty front")
    m = len(values[front[0]])
    inf = [False] * a
    orders: list[list[int]] = []
    ranges: list[int] = []
    for j in range(m):
        order = sorted(range(a), key=lambda p: values[front[p]][j])
        orders.append(order)
        ranges.append(values[front[order[-1]]][j] - values[front[order[0]]][j])
        inf[order[0]] = True
        inf[order[-1]] = True
    denom = 1
    for r in ranges:
        if r > 0:
            denom *= r
    nums = [0] * a
    for j in range(m):
        if ranges[j] <= 0:
            continue
        weight = denom // ranges[j]
        order = orders[j]
        for pos in range(1, a - 1):
            gap = values[front[order[pos + 1]]][j] - values[front[order[pos - 1]]][j]
            nums[order[pos]] += gap * weight
    return inf, nums, denom


def crowding_groups(
    front: Sequence[int], inf: Sequence[bool], nums: Sequence[int]
) -> list[list[int]]:
    """Partition a front by exact CD equality, ordered by strictly decreasing CD.

    Returns groups of member indices (the infinite group first when present);
    within a group, members keep their front order.
    """
    a = len(front)
    order = sorted(range(a), key=lambda p: (not inf[p], 0 if inf[p] else -nums[p], p))
    groups: list[list[int]] = []
    prev_key = None
    for p in order:
        key = (inf[p], nums[p] if not inf[p] else 0)
        if key != prev_key:
            groups.append([])
            prev_key = key
        groups[-1].append(front[p])
    return groups


def critical_cd_group_index(group_sizes: Sequence[int], d: int) -> int:
    """Minimal 1-based c* with cumulative group size >= d."""
    total = sum(group_sizes)
    if not 1 <= d <= total:
        raise ContractViolationError(f"slot count {d} outside [1, {total}]")
    cum = 0
    for c, size in enumerate(group_sizes):
        cum += size
        if cum >= d:
            return c + 1
    raise AssertionError("unreachable")


def select_random_indices(pool: Sequence[int], s: int, rng: RngStream) -> list[int]:
    """Uniform sub-multiset of ``pool`` of size ``s`` (classic tie-breaker)."""
    if not 0 <= s <= len(pool):
        raise ContractViolationError(f"cannot select {s} of {len(pool)}")
    if s == 0:
        return []
    if s == len(pool):
        return list(pool)
    return sample_without_replacement(pool, s, rng)


def select_balanced_indices(
    pool: Sequence[int], pool_values: Sequence[Value], s: int, rng: RngStream
) -> list[int]:
    """Balanced tie-breaker: even per-objective-value quotas, then uniform fill.

    ``pool`` is partitioned by exact objective value into ``a`` groups; each
    group yields ``min(len(group), s // a)`` members uniformly at random (one
    shuffle per sampled group).  If fewer than ``s`` members were taken, the
    remainder is a single uniform sample from the concatenated leftovers.
    """
    if not 0 <= s <= len(pool):
        raise ContractViolationError(f"cannot select {s} of {len(pool)}")
    if s == 0:
        return []
    if s == len(pool):
        return list(pool)
    groups: dict[Value, list[int]] = {}
    for idx, val in zip(pool, pool_values):
        groups.setdefault(val, []).append(idx)
    quota = s // len(groups)
    taken: list[int] = []
    leftovers: list[int] = []
    for val in sorted(groups):
        group = groups[val]
        t = min(len(group), quota)
        if t == 0:
            leftovers.extend(group)
        elif t == len(group):
            taken.extend(group)
        else:
            mixed = shuffled(group, rng)
            taken.extend(mixed[:t])
            leftovers.extend(mixed[t:])
    missing = s - len(taken)
    if missing > 0:
        if missing == len(leftovers):
            taken.extend(leftovers)
        else:
            taken.extend(sample_without_replacement(leftovers, missing, rng))
    return taken


@dataclass
class SelectionDetail:
    """Everything one survivor-selection pass decided, for audit and checks."""

    kept: list[int]
    ranks: list[int]
    fronts: list[list[int]]
    critical_rank: int
    critical_front: list[int]
    slots_from_critical_front: int
    cd_inf: list[bool] | None = None
    cd_nums: list[int] | None = None
    cd_denom: int | None = None
    cd_groups: list[list[int]] | None = None
    critical_cd_group: int | None = None
    tail_slots: int = 0
    tail_pool: list[int] = field(default_factory=list)
    tail: list[int] = field(default_factory=list)


def select_population(
    values: Sequence[Value],
    target: int,
    tiebreak: str,
    rng: RngStream,
    compute_cd_always: bool = False,
) -> SelectionDetail:
    """One full survivor selection: ranks, critical rank, CD groups, tail sample.

    ``values`` are the objective values of the combined population; ``target``
    members are kept.  ``tiebreak`` is ``"classic"`` or ``"balanced"``.  When a
    critical front fits exactly, it is taken whole and no crowding distance is
    computed unless ``compute_cd_always`` (instrumentation) asks for it.
    """
    if tiebreak not in ("classic", "balanced"):
        raise ContractViolationError(f"unknown tiebreak {tiebreak!r}")
    ranks = domination_ranks(values)
    fronts = fronts_from_ranks(ranks)
    j_star = critical_rank_index([len(f) for f in fronts], target)
    kept: list[int] = []
    for front in fronts[: j_star - 1]:
        kept.extend(front)
    critical = fronts[j_star - 1]
    d = target - len(kept)

    detail = SelectionDetail(
        kept=kept,
        ranks=ranks,
        fronts=fronts,
        critical_rank=j_star,
        critical_front=critical,
        slots_from_critical_front=d,
    )

    if d == len(critical):
        # Whole critical front fits: no tie-breaking, no randomness.
        kept.extend(critical)
        if compute_cd_always:
            detail.cd_inf, detail.cd_nums, detail.cd_denom = crowding_numerators(values, critical)
        return detail

    inf, nums, denom = crowding_numerators(values, critical)
    groups = crowding_groups(critical, inf, nums)
    c_star = critical_cd_group_index([len(g) for g in groups], d)
    for group in groups[: c_star - 1]:
        kept.extend(group)
    pool = groups[c_star - 1]
    s = d - sum(len(g) for g in groups[: c_star - 1])
    if tiebreak == "classic":
        tail = select_random_indices(pool, s, rng)
    else:
        tail = select_balanced_indices(pool, [values[i] for i in pool], s, rng)
    kept.extend(tail)

    detail.cd_inf, detail.cd_nums, detail.cd_denom = inf, nums, denom
    detail.cd_groups = groups
    detail.critical_cd_group = c_star
    detail.tail_slots = s
    detail.tail_pool = pool
    detail.tail = tail
    return detail
