# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled generational loop for classic/balanced NSGA-II runs.

Replicates the Python engine (`nsgalab.engine`) draw-for-draw on the same
Philox stream: per offspring one parent-index word then one word per bit
position; survivor selection consumes index draws exactly as the shared
selection core does.  Supports the benchmark families with m <= 4 objectives
and n <= 8192 (objective values must fit 15 bits for the packed value codes).
Run-level parity with the Python engine is enforced by the test suite.
"""

from cpython.pycapsule cimport PyCapsule_GetPointer
from libcpp.algorithm cimport sort as cpp_sort
from libcpp.pair cimport pair
from libcpp.vector cimport vector

import numpy as np

cimport numpy as cnp
from numpy.random cimport bitgen_t

cnp.import_array()

ctypedef long long i64
ctypedef pair[i64, i64] keypair

cdef double TWO_NEG_53 = 1.0 / 9007199254740992.0
cdef i64 I64_MAX = 9223372036854775807

# family codes
cdef int FAM_OMM = 0
cdef int FAM_LOTZ = 1
cdef int FAM_OJZJ = 2


cdef inline double next_unit(bitgen_t *rng) noexcept:
    return <double> (rng.next_uint64(rng.state) >> 11) * TWO_NEG_53


cdef inline i64 next_index(bitgen_t *rng, i64 bound) noexcept:
    return <i64> (next_unit(rng) * bound)


cdef inline i64 jump_value(i64 count, i64 nb, i64 k) noexcept:
    if count <= nb - k or count == nb:
        return k + count
    return nb - count


cdef void evaluate_row(unsigned char *bits, i64 *obj, int family, int is_omm3,
                       int n, int blocks, int nb, int kgap) noexcept:
    cdef int b, i, base
    cdef i64 ones, lo, tz
    if is_omm3:
        ones = 0
        for i in range(n // 2):
            ones += bits[i]
        obj[1] = ones
        ones = 0
        for i in range(n // 2, n):
            ones += bits[i]
        obj[2] = ones
        obj[0] = n - obj[1] - obj[2]
        return
    for b in range(blocks):
        base = b * nb
        if family == FAM_LOTZ:
            lo = 0
            for i in range(nb):
                if bits[base + i] != 1:
                    break
                lo += 1
            tz = 0
            for i in range(nb - 1, -1, -1):
                if bits[base + i] != 0:
                    break
                tz += 1
            obj[2 * b] = lo
            obj[2 * b + 1] = tz
        else:
            ones = 0
            for i in range(nb):
                ones += bits[base + i]
            if family == FAM_OMM:
                obj[2 * b] = nb - ones
                obj[2 * b + 1] = ones
            else:
                obj[2 * b] = jump_value(ones, nb, kgap)
                obj[2 * b + 1] = jump_value(nb - ones, nb, kgap)


cdef i64 front_index_row(i64 *obj, int family, int is_omm3,
                         int n, int blocks, int nb, int kgap) noexcept:
    """Slot of an objective value on the Pareto front, or -1 when off-front."""
    cdef int b
    cdef i64 idx = 0, base_size, v1, v2, bi
    if is_omm3:
        return obj[1] * (n // 2 + 1) + obj[2]
    if family == FAM_OJZJ:
        base_size = nb - 2 * kgap + 3
    else:
        base_size = nb + 1
    for b in range(blocks):
        v1 = obj[2 * b]
        v2 = obj[2 * b + 1]
        if family == FAM_OMM:
            bi = v1
        elif family == FAM_LOTZ:
            if v1 + v2 != nb:
                return -1
            bi = v1
        else:
            if v1 + v2 != nb + 2 * kgap:
                return -1
            if v1 == kgap:
                bi = 0
            elif 2 * kgap <= v1 <= nb:
                bi = v1 - 2 * kgap + 1
            elif v1 == nb + kgap:
                bi = nb - 2 * kgap + 2
            else:
                return -1
        idx = idx * base_size + bi
    return idx


cdef inline i64 value_code(i64 *obj, int m) noexcept:
    """Pack an objective vector MSB-first so code order == tuple order."""
    cdef i64 code = 0
    cdef int j
    for j in range(m):
        code = (code << 16) | obj[j]
    return code


cdef void compute_ranks(i64[:, ::1] objs, int cnt, int m, vector[int] &ranks) noexcept:
    """Non-dominated-sorting ranks, deduplicated by exact objective value."""
    cdef vector[keypair] by_code
    cdef vector[int] uid, rep, urank
    cdef vector[i64] maxb
    cdef vector[keypair] by_sum
    cdef vector[int] sum_uid
    cdef int pos, u, n_unique, i, j, best, rank, lo_s, hi_s, mid
    cdef i64 code, prev_code, b, s_i, s_j
    cdef bint dom

    by_code.resize(cnt)
    for i in range(cnt):
        by_code[i] = keypair(-value_code(&objs[i, 0], m), i)
    cpp_sort(by_code.begin(), by_code.end())

    uid.resize(cnt)
    n_unique = 0
    prev_code = I64_MAX
    for pos in range(cnt):
        code = by_code[pos].first
        if pos == 0 or code != prev_code:
            rep.push_back(<int> by_code[pos].second)
            n_unique += 1
            prev_code = code
        uid[<int> by_code[pos].second] = n_unique - 1

    urank.resize(n_unique)
    if m == 2:
        # sweep in value-descending order; among processed values, p dominates
        # the current (a, b) iff p's second objective >= b
        for u in range(n_unique):
            b = objs[rep[u], 1]
            lo_s = 0
            hi_s = <int> maxb.size()
            while lo_s < hi_s:
                mid = (lo_s + hi_s) // 2
                if maxb[mid] >= b:
                    lo_s = mid + 1
                else:
                    hi_s = mid
            rank = lo_s + 1
            urank[u] = rank
            if rank > <int> maxb.size():
                maxb.push_back(b)
            else:
                maxb[rank - 1] = b
    else:
        # rank(v) = 1 + max rank of strict dominators; dominators have a
        # strictly larger component sum, so process in sum-descending order
        by_sum.resize(n_unique)
        for u in range(n_unique):
            s_i = 0
            for j in range(m):
                s_i += objs[rep[u], j]
            by_sum[u] = keypair(-s_i, u)
        cpp_sort(by_sum.begin(), by_sum.end())
        for i in range(n_unique):
            s_i = -by_sum[i].first
            best = 0
            for pos in range(i):
                s_j = -by_sum[pos].first
                if s_j <= s_i:
                    break
                u = <int> by_sum[pos].second
                dom = True
                for j in range(m):
                    if objs[rep[u], j] < objs[rep[<int> by_sum[i].second], j]:
                        dom = False
                        break
                if dom and urank[u] > best:
                    best = urank[u]
            urank[<int> by_sum[i].second] = best + 1

    ranks.resize(cnt)
    for i in range(cnt):
        ranks[i] = urank[uid[i]]


cdef void crowding(i64[:, ::1] objs, vector[int] &front, int m,
                   vector[bint] &inf, vector[i64] &nums) noexcept:
    """Exact CD numerators over the common denominator; stable counting sorts."""
    cdef int a = <int> front.size()
    cdef int j, p, q
    cdef i64 v, minv, maxv, denom, weight, gap
    cdef vector[int] counts, order
    cdef vector[i64] ranges

    inf.assign(a, False)
    nums.assign(a, 0)
    ranges.resize(m)
    order.resize(a)

    denom = 1
    for j in range(m):
        minv = objs[front[0], j]
        maxv = minv
        for p in range(1, a):
            v = objs[front[p], j]
            if v < minv:
                minv = v
            if v > maxv:
                maxv = v
        ranges[j] = maxv - minv
        if ranges[j] > 0:
            denom *= ranges[j]

    for j in range(m):
        minv = objs[front[0], j]
        for p in range(1, a):
            v = objs[front[p], j]
            if v < minv:
                minv = v
        counts.assign(<int> (ranges[j] + 2), 0)
        for p in range(a):
            counts[<int> (objs[front[p], j] - minv) + 1] += 1
        for q in range(1, <int> counts.size()):
            counts[q] += counts[q - 1]
        for p in range(a):
            v = objs[front[p], j] - minv
            order[counts[<int> v]] = p
            counts[<int> v] += 1
        inf[order[0]] = True
        inf[order[a - 1]] = True
        if ranges[j] > 0:
            weight = denom / ranges[j]
            for p in range(1, a - 1):
                gap = objs[front[order[p + 1]], j] - objs[front[order[p - 1]], j]
                nums[order[p]] += gap * weight


cdef void fisher_yates_prefix(vector[i64] &arr, int k, bitgen_t *rng) noexcept:
    """Forward partial Fisher-Yates: k draws, uniform k-prefix."""
    cdef int total = <int> arr.size()
    cdef int i
    cdef i64 j, tmp
    for i in range(k):
        j = i + next_index(rng, total - i)
        tmp = arr[i]
        arr[i] = arr[<int> j]
        arr[<int> j] = tmp


cdef void select_tail(vector[i64] &pool, i64[:, ::1] objs, int m, int s,
                      bint balanced, bitgen_t *rng, vector[i64] &out) noexcept:
    """Classic or balanced sample of s members from the critical CD group."""
    cdef int plen = <int> pool.size()
    cdef int t, i, gsize, gstart, n_groups, take, missing
    cdef i64 quota
    cdef vector[keypair] coded
    cdef vector[i64] work, leftovers
    cdef i64 prev_code

    out.clear()
    if s == plen:
        for i in range(plen):
            out.push_back(pool[i])
        return
    if not balanced:
        work = pool
        fisher_yates_prefix(work, s, rng)
        for i in range(s):
            out.push_back(work[i])
        return

    coded.resize(plen)
    for i in range(plen):
        coded[i] = keypair(value_code(&objs[<int> pool[i], 0], m), i)
    cpp_sort(coded.begin(), coded.end())

    n_groups = 0
    prev_code = -1
    for i in range(plen):
        if i == 0 or coded[i].first != prev_code:
            n_groups += 1
            prev_code = coded[i].first
    quota = s / n_groups

    gstart = 0
    while gstart < plen:
        gsize = 1
        while gstart + gsize < plen and coded[gstart + gsize].first == coded[gstart].first:
            gsize += 1
        take = <int> quota if quota < gsize else gsize
        if take == 0:
            for i in range(gstart, gstart + gsize):
                leftovers.push_back(pool[<int> coded[i].second])
        elif take == gsize:
            for i in range(gstart, gstart + gsize):
                out.push_back(pool[<int> coded[i].second])
        else:
            work.clear()
            for i in range(gstart, gstart + gsize):
                work.push_back(pool[<int> coded[i].second])
            fisher_yates_prefix(work, gsize, rng)
            for i in range(take):
                out.push_back(work[i])
            for i in range(take, gsize):
                leftovers.push_back(work[i])
        gstart += gsize

    missing = s - <int> out.size()
    if missing > 0:
        if missing == <int> leftovers.size():
            for i in range(<int> leftovers.size()):
                out.push_back(leftovers[i])
        else:
            fisher_yates_prefix(leftovers, missing, rng)
            for i in range(missing):
                out.push_back(leftovers[i])


def run_trial_kernel(bit_generator, int family, int is_omm3, int n, int m,
                     int blocks, int nb, int kgap, int n_pop,
                     bint balanced, i64 budget, i64 front_total):
    """Whole seeded trial: init + generational loop until coverage or budget.

    Returns (iterations, evaluations, covered, covered_count, final_bits).
    """
    if m > 4 or n > 8192:
        raise ValueError("kernel supports m <= 4 and n <= 8192")

    capsule = bit_generator.capsule
    cdef bitgen_t *rng = <bitgen_t *> PyCapsule_GetPointer(capsule, "BitGenerator")

    cdef cnp.ndarray[cnp.uint8_t, ndim=2] bits_arr = np.empty((2 * n_pop, n), dtype=np.uint8)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] objs_arr = np.empty((2 * n_pop, m), dtype=np.int64)
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] keep_bits = np.empty((n_pop, n), dtype=np.uint8)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] keep_objs = np.empty((n_pop, m), dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] seen_in_gen = np.full(front_total, -1, dtype=np.int64)
    cdef unsigned char[:, ::1] bits = bits_arr
    cdef i64[:, ::1] objs = objs_arr
    cdef unsigned char[:, ::1] kbits = keep_bits
    cdef i64[:, ::1] kobjs = keep_objs
    cdef i64[::1] seen = seen_in_gen

    cdef i64 current_covered = 0, best_covered = 0, evaluations, iterations = 0, fi, parent
    cdef int i, j, r, cnt, j_star, n_fronts, d, s, pos, a
    cdef vector[int] ranks
    cdef vector[int] front
    cdef vector[int] front_sizes
    cdef vector[bint] inf
    cdef vector[i64] nums
    cdef vector[keypair] cd_order
    cdef vector[i64] kept, pool, tail
    cdef i64 key, cum, group_start, group_end
    cdef bint complete

    # init: one coin flip per bit, individuals in order
    for i in range(n_pop):
        for j in range(n):
            bits[i, j] = 1 if next_unit(rng) < 0.5 else 0
        evaluate_row(&bits[i, 0], &objs[i, 0], family, is_omm3, n, blocks, nb, kgap)
        fi = front_index_row(&objs[i, 0], family, is_omm3, n, blocks, nb, kgap)
        if fi >= 0 and seen[<int> fi] != 0:
            seen[<int> fi] = 0
            current_covered += 1
    best_covered = current_covered
    evaluations = n_pop
    complete = current_covered == front_total

    cnt = 2 * n_pop
    while not complete and evaluations + n_pop <= budget:
        # offspring: parent-index word, then one word per bit position
        for i in range(n_pop):
            parent = next_index(rng, n_pop)
            for j in range(n):
                if next_unit(rng) < 1.0 / n:
                    bits[n_pop + i, j] = 1 - bits[<int> parent, j]
                else:
                    bits[n_pop + i, j] = bits[<int> parent, j]
            evaluate_row(&bits[n_pop + i, 0], &objs[n_pop + i, 0],
                         family, is_omm3, n, blocks, nb, kgap)

        compute_ranks(objs, cnt, m, ranks)
        n_fronts = 0
        for i in range(cnt):
            if ranks[i] > n_fronts:
                n_fronts = ranks[i]
        front_sizes.assign(n_fronts, 0)
        for i in range(cnt):
            front_sizes[ranks[i] - 1] += 1

        cum = 0
        j_star = 0
        for r in range(n_fronts):
            cum += front_sizes[r]
            if cum >= n_pop:
                j_star = r + 1
                break

        kept.clear()
        for r in range(1, j_star):
            for i in range(cnt):
                if ranks[i] == r:
                    kept.push_back(i)
        front.clear()
        for i in range(cnt):
            if ranks[i] == j_star:
                front.push_back(i)
        a = <int> front.size()
        d = n_pop - <int> kept.size()

        if d == a:
            # whole critical front fits: no tie-breaking, no randomness
            for pos in range(a):
                kept.push_back(front[pos])
        else:
            crowding(objs, front, m, inf, nums)
            cd_order.resize(a)
            for pos in range(a):
                key = -I64_MAX if inf[pos] else -nums[pos]
                cd_order[pos] = keypair(key, pos)
            cpp_sort(cd_order.begin(), cd_order.end())

            # walk CD groups in decreasing-CD order up to the critical group
            cum = 0
            group_start = 0
            while True:
                group_end = group_start + 1
                while group_end < a and cd_order[<int> group_end].first == cd_order[<int> group_start].first:
                    group_end += 1
                if cum + (group_end - group_start) >= d:
                    break
                for pos in range(<int> group_start, <int> group_end):
                    kept.push_back(front[<int> cd_order[pos].second])
                cum += group_end - group_start
                group_start = group_end

            s = d - <int> cum
            pool.clear()
            for pos in range(<int> group_start, <int> group_end):
                pool.push_back(front[<int> cd_order[pos].second])
            select_tail(pool, objs, m, s, balanced, rng, tail)
            for pos in range(<int> tail.size()):
                kept.push_back(tail[pos])

        iterations += 1
        current_covered = 0
        for i in range(n_pop):
            pos = <int> kept[i]
            for j in range(n):
                kbits[i, j] = bits[pos, j]
            for j in range(m):
                kobjs[i, j] = objs[pos, j]
        for i in range(n_pop):
            for j in range(n):
                bits[i, j] = kbits[i, j]
            for j in range(m):
                objs[i, j] = kobjs[i, j]
            fi = front_index_row(&objs[i, 0], family, is_omm3, n, blocks, nb, kgap)
            if fi >= 0 and seen[<int> fi] != iterations:
                seen[<int> fi] = iterations
                current_covered += 1
        if current_covered > best_covered:
            best_covered = current_covered

        evaluations += n_pop
        complete = current_covered == front_total

    return (
        int(iterations),
        int(evaluations),
        bool(complete),
        int(best_covered),
        bits_arr[:n_pop].copy(),
    )
