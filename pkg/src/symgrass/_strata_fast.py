"""Jitted inner loop for isotropic-subspace counting over prime fields.

One pivot pattern per call. Rows of the echelon basis are chosen top-down;
at each depth the isotropy constraints against the rows already fixed form a
small linear system over GF(p), so only genuine isotropic prefixes are ever
visited. Counts per radical-intersection dimension are accumulated at the
leaves. Deterministic and GIL-free, so pattern partitions can run on threads
and be merged in a fixed order.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def count_pattern(n, k, p, grams, pivots, inv_table, bucket, ceiling, counts):
    """Count isotropic subspaces with the given pivot pattern.

    grams: (m, n, n) int64, entries in [0, p). counts: int64[k+1], zeroed by
    the caller; bucket=True adds at index dim(V meet radical of grams[0]),
    bucket=False adds everything at index 0. Returns the number of subspaces
    emitted, or -1 if the ceiling was exceeded.
    """
    m = grams.shape[0]

    # free column layout per row
    free_cols = np.zeros((k, n), dtype=np.int64)
    free_cnt = np.zeros(k, dtype=np.int64)
    is_pivot = np.zeros(n, dtype=np.int64)
    for a in range(k):
        is_pivot[pivots[a]] = 1
    for a in range(k):
        c = 0
        for j in range(pivots[a] + 1, n):
            if is_pivot[j] == 0:
                free_cols[a, c] = j
                c += 1
        free_cnt[a] = c

    basis = np.zeros((k, n), dtype=np.int64)
    w = np.zeros((k, m, n), dtype=np.int64)

    x0row = np.zeros((k, n), dtype=np.int64)
    nulls = np.zeros((k, n, n), dtype=np.int64)
    nullity = np.zeros(k, dtype=np.int64)
    nsol = np.zeros(k, dtype=np.int64)
    cnt = np.zeros(k, dtype=np.int64)
    feasible = np.zeros(k, dtype=np.int64)

    max_eq = k * m
    sys = np.zeros((max_eq, n + 1), dtype=np.int64)
    pivcol = np.zeros(n, dtype=np.int64)
    pivot_of_col = np.zeros(n, dtype=np.int64)
    scratch = np.zeros((k, n), dtype=np.int64)

    total = np.int64(0)
    depth = 0

    # ---- solve constraints at depth 0 (no equations)
    _solve_depth(
        0, n, k, p, m, grams, pivots, free_cols, free_cnt, w,
        x0row, nulls, nullity, nsol, cnt, feasible, sys, pivcol, pivot_of_col,
        inv_table,
    )

    while depth >= 0:
        if feasible[depth] == 0 or cnt[depth] >= nsol[depth]:
            depth -= 1
            continue
        c = cnt[depth]
        cnt[depth] += 1
        # materialize the row: particular solution plus null-space digits
        for j in range(n):
            basis[depth, j] = x0row[depth, j]
        cc = c
        for t in range(nullity[depth]):
            digit = cc % p
            cc //= p
            if digit != 0:
                for j in range(n):
                    basis[depth, j] = (basis[depth, j] + digit * nulls[depth, t, j]) % p
        # pairing rows of the new basis vector
        for g in range(m):
            for j in range(n):
                acc = np.int64(0)
                for l in range(n):
                    acc += basis[depth, l] * grams[g, l, j]
                w[depth, g, j] = acc % p
        if depth == k - 1:
            total += 1
            if total > ceiling:
                return np.int64(-1)
            if bucket:
                rank = _rank_rows(w, k, n, p, inv_table, scratch)
                counts[k - rank] += 1
            else:
                counts[0] += 1
        else:
            depth += 1
            _solve_depth(
                depth, n, k, p, m, grams, pivots, free_cols, free_cnt, w,
                x0row, nulls, nullity, nsol, cnt, feasible, sys, pivcol,
                pivot_of_col, inv_table,
            )
    return total


@njit(cache=True, nogil=True)
def _solve_depth(
    depth, n, k, p, m, grams, pivots, free_cols, free_cnt, w,
    x0row, nulls, nullity, nsol, cnt, feasible, sys, pivcol, pivot_of_col,
    inv_table,
):
    f = free_cnt[depth]
    neq = depth * m
    for b in range(depth):
        for g in range(m):
            ri = b * m + g
            for j in range(f):
                sys[ri, j] = w[b, g, free_cols[depth, j]] % p
            sys[ri, f] = (-w[b, g, pivots[depth]]) % p
    for j in range(f):
        pivot_of_col[j] = -1
    rank = 0
    for col in range(f):
        pr = -1
        for i in range(rank, neq):
            if sys[i, col] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != rank:
            for j in range(f + 1):
                tmp = sys[rank, j]
                sys[rank, j] = sys[pr, j]
                sys[pr, j] = tmp
        inv = inv_table[sys[rank, col]]
        for j in range(f + 1):
            sys[rank, j] = (sys[rank, j] * inv) % p
        for i in range(neq):
            if i != rank and sys[i, col] != 0:
                factor = sys[i, col]
                for j in range(f + 1):
                    sys[i, j] = (sys[i, j] - factor * sys[rank, j]) % p
        pivcol[rank] = col
        pivot_of_col[col] = rank
        rank += 1
    for i in range(rank, neq):
        if sys[i, f] != 0:
            feasible[depth] = 0
            nsol[depth] = 0
            cnt[depth] = 0
            return
    for j in range(n):
        x0row[depth, j] = 0
    x0row[depth, pivots[depth]] = 1
    for ri in range(rank):
        x0row[depth, free_cols[depth, pivcol[ri]]] = sys[ri, f]
    nt = 0
    for col in range(f):
        if pivot_of_col[col] == -1:
            for j in range(n):
                nulls[depth, nt, j] = 0
            nulls[depth, nt, free_cols[depth, col]] = 1
            for ri in range(rank):
                v = sys[ri, col]
                if v != 0:
                    nulls[depth, nt, free_cols[depth, pivcol[ri]]] = (p - v) % p
            nt += 1
    nullity[depth] = nt
    total = np.int64(1)
    for _ in range(nt):
        total *= p
    nsol[depth] = total
    cnt[depth] = 0
    feasible[depth] = 1


@njit(cache=True, nogil=True)
def _rank_rows(w, k, n, p, inv_table, scratch):
    for a in range(k):
        for j in range(n):
            scratch[a, j] = w[a, 0, j]
    rank = 0
    for col in range(n):
        pr = -1
        for i in range(rank, k):
            if scratch[i, col] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != rank:
            for j in range(n):
                tmp = scratch[rank, j]
                scratch[rank, j] = scratch[pr, j]
                scratch[pr, j] = tmp
        inv = inv_table[scratch[rank, col]]
        for j in range(col, n):
            scratch[rank, j] = (scratch[rank, j] * inv) % p
        for i in range(rank + 1, k):
            if scratch[i, col] != 0:
                factor = scratch[i, col]
                for j in range(col, n):
                    scratch[i, j] = (scratch[i, j] - factor * scratch[rank, j]) % p
        rank += 1
        if rank == k:
            break
    return rank
