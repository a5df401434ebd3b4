"""Sequential scan kernels over int64 bit-mask arrays.

Everything here sticks to numpy arrays and scalar integer arithmetic so the
same source runs compiled (numba backend) or interpreted (fallback backend,
reached through each dispatcher's ``py_func``). Mask arrays are sorted
ascending; membership tests are binary searches.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a default dependency
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn

        return wrap


@njit(cache=True)
def _contains(masks, value):
    lo = 0
    hi = masks.shape[0]
    while lo < hi:
        mid = (lo + hi) >> 1
        if masks[mid] < value:
            lo = mid + 1
        else:
            hi = mid
    return lo < masks.shape[0] and masks[lo] == value


@njit(cache=True)
def small_cut_masks(n, eu, ev, ew, lam):
    """Masks S over {0..n-2} with cut weight strictly below lam.

    Walks all subsets of the first n-1 vertices in single-bit-flip order,
    maintaining the cut value incrementally; the caller mirrors the result
    onto the complements. The empty set is skipped.
    """
    ne = eu.shape[0]
    deg = np.zeros(n, np.int64)
    for e in range(ne):
        deg[eu[e]] += 1
        deg[ev[e]] += 1
    off = np.zeros(n + 1, np.int64)
    for v in range(n):
        off[v + 1] = off[v] + deg[v]
    nbr = np.empty(off[n], np.int64)
    wgt = np.empty(off[n], np.int64)
    cursor = off[:n].copy()
    for e in range(ne):
        u = eu[e]
        v = ev[e]
        nbr[cursor[u]] = v
        wgt[cursor[u]] = ew[e]
        cursor[u] += 1
        nbr[cursor[v]] = u
        wgt[cursor[v]] = ew[e]
        cursor[v] += 1

    half = 1 << (n - 1)
    out = np.empty(half, np.int64)
    cnt = 0
    cur = 0
    cut = 0
    for i in range(1, half):
        b = 0
        ii = i
        while ii & 1 == 0:
            ii >>= 1
            b += 1
        side = (cur >> b) & 1
        delta = 0
        for k in range(off[b], off[b + 1]):
            if ((cur >> nbr[k]) & 1) == side:
                delta += wgt[k]
            else:
                delta -= wgt[k]
        cur ^= 1 << b
        cut += delta
        if cut < lam:
            out[cnt] = cur
            cnt += 1
    return out[:cnt].copy()


@njit(cache=True)
def gray_cut_values(n, eu, ev, ew):
    """All subset masks over {0..n-2} in flip order with their cut values."""
    ne = eu.shape[0]
    deg = np.zeros(n, np.int64)
    for e in range(ne):
        deg[eu[e]] += 1
        deg[ev[e]] += 1
    off = np.zeros(n + 1, np.int64)
    for v in range(n):
        off[v + 1] = off[v] + deg[v]
    nbr = np.empty(off[n], np.int64)
    wgt = np.empty(off[n], np.int64)
    cursor = off[:n].copy()
    for e in range(ne):
        u = eu[e]
        v = ev[e]
        nbr[cursor[u]] = v
        wgt[cursor[u]] = ew[e]
        cursor[u] += 1
        nbr[cursor[v]] = u
        wgt[cursor[v]] = ew[e]
        cursor[v] += 1

    half = 1 << (n - 1)
    masks = np.empty(half, np.int64)
    vals = np.empty(half, np.int64)
    masks[0] = 0
    vals[0] = 0
    cur = 0
    cut = 0
    for i in range(1, half):
        b = 0
        ii = i
        while ii & 1 == 0:
            ii >>= 1
            b += 1
        side = (cur >> b) & 1
        delta = 0
        for k in range(off[b], off[b + 1]):
            if ((cur >> nbr[k]) & 1) == side:
                delta += wgt[k]
            else:
                delta -= wgt[k]
        cur ^= 1 << b
        cut += delta
        masks[i] = cur
        vals[i] = cut
    return masks, vals


@njit(cache=True)
def minimal_flags(masks):
    """flags[i] is True when masks[i] has no proper subset in the array."""
    m = masks.shape[0]
    flags = np.ones(m, np.bool_)
    for i in range(m):
        mi = masks[i]
        for j in range(m):
            if j != i and (masks[j] & ~mi) == 0:
                flags[i] = False
                break
    return flags


@njit(cache=True)
def pliable_violation(masks, full):
    """First pair (A, B) with fewer than two corner sets in the family.

    Corners equal to the empty set or the ground set are never members, so
    plain membership tests implement the corner-counting rule directly.
    Returns (-1, -1) when every pair passes.
    """
    m = masks.shape[0]
    for i in range(m):
        a = masks[i]
        for j in range(i + 1, m):
            b = masks[j]
            cnt = 0
            if _contains(masks, a & b):
                cnt += 1
            if _contains(masks, a | b):
                cnt += 1
            if _contains(masks, a & ~b):
                cnt += 1
            if _contains(masks, b & ~a):
                cnt += 1
            if cnt < 2:
                return a, b
    return -1, -1


@njit(cache=True)
def structsub_violation(masks, full):
    """First crossing pair missing an intersection/union corner or a
    difference corner. Returns (-1, -1) when none."""
    m = masks.shape[0]
    for i in range(m):
        a = masks[i]
        for j in range(i + 1, m):
            b = masks[j]
            inter = a & b
            dab = a & ~b
            dba = b & ~a
            outer = full & ~(a | b)
            if inter != 0 and dab != 0 and dba != 0 and outer != 0:
                ok_in = _contains(masks, inter) or _contains(masks, a | b)
                ok_diff = _contains(masks, dab) or _contains(masks, dba)
                if not (ok_in and ok_diff):
                    return a, b
    return -1, -1


@njit(cache=True)
def sparse_crossing_violation(masks, minimal, full):
    """First member crossing two minimal sets, as (S, C1, C2) masks.

    Returns (-1, -1, -1) when every member crosses at most one minimal set.
    """
    m = masks.shape[0]
    for i in range(m):
        s = masks[i]
        first = -1
        for j in range(m):
            if not minimal[j]:
                continue
            c = masks[j]
            if (s & c) != 0 and (s & ~c) != 0 and (c & ~s) != 0 and (full & ~(s | c)) != 0:
                if first < 0:
                    first = j
                else:
                    return s, masks[first], masks[j]
    return -1, -1, -1


@njit(cache=True)
def gamma_star_exhaustive(masks, minimal, full, budget, kmax):
    """Enumerate remainder-property configurations up to a tuple budget.

    A configuration is a minimal set C, a member S0 crossing C, and k >= 1
    pairwise-disjoint proper subsets of S0 each crossing C; it passes when
    S0 minus (union of subsets and C) is empty or a member. kmax bounds k
    (0 means unbounded). Returns
        (completed, violated, c, s0, chosen_masks, tuples, max_k)
    where completed means the full space was enumerated within budget.
    """
    m = masks.shape[0]
    empty = np.empty(0, np.int64)
    cand = np.empty(m, np.int64)
    stack_next = np.empty(m + 1, np.int64)
    stack_union = np.empty(m + 1, np.int64)
    chosen = np.empty(m, np.int64)
    tuples = 0
    max_k = 0
    for ci in range(m):
        if not minimal[ci]:
            continue
        c = masks[ci]
        for si in range(m):
            s0 = masks[si]
            if (s0 & c) == 0 or (s0 & ~c) == 0 or (c & ~s0) == 0 or (full & ~(s0 | c)) == 0:
                continue
            nc = 0
            for ti in range(m):
                t = masks[ti]
                if t == s0 or (t & ~s0) != 0:
                    continue
                if (t & c) != 0 and (t & ~c) != 0 and (c & ~t) != 0 and (full & ~(t | c)) != 0:
                    cand[nc] = t
                    nc += 1
            if nc == 0:
                continue
            level = 0
            stack_next[0] = 0
            stack_union[0] = 0
            while level >= 0:
                t_idx = stack_next[level]
                if t_idx == nc:
                    level -= 1
                    continue
                stack_next[level] = t_idx + 1
                cm = cand[t_idx]
                if (cm & stack_union[level]) != 0:
                    continue
                chosen[level] = cm
                union2 = stack_union[level] | cm
                k = level + 1
                tuples += 1
                if k > max_k:
                    max_k = k
                rem = s0 & ~(union2 | c)
                if rem != 0 and not _contains(masks, rem):
                    return False, True, c, s0, chosen[:k].copy(), tuples, max_k
                if tuples > budget:
                    return False, False, -1, -1, empty, tuples, max_k
                if kmax == 0 or k < kmax:
                    level += 1
                    stack_next[level] = t_idx + 1
                    stack_union[level] = union2
    return True, False, -1, -1, empty, tuples, max_k
