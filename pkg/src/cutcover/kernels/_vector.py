"""Vectorized numpy versions of the pairwise scan kernels.

These back the ``numpy`` backend. Outputs match `_impl` exactly: scans run
in ascending mask order and report the lexicographically first violation.
"""

from __future__ import annotations

import numpy as np


def _contains_vec(masks, values):
    idx = np.searchsorted(masks, values)
    clipped = np.minimum(idx, masks.size - 1)
    return (idx < masks.size) & (masks[clipped] == values)


def small_cut_masks(n, eu, ev, ew, lam):
    half = 1 << (n - 1)
    idx = np.arange(half, dtype=np.int64)
    cut = np.zeros(half, dtype=np.int64)
    for e in range(eu.size):
        cut += ew[e] * (((idx >> eu[e]) ^ (idx >> ev[e])) & 1)
    sel = cut < lam
    sel[0] = False
    return idx[sel]


def minimal_flags(masks):
    m = masks.size
    flags = np.ones(m, np.bool_)
    for i in range(m):
        sub = (masks & ~masks[i]) == 0
        sub[i] = False
        if sub.any():
            flags[i] = False
    return flags


def pliable_violation(masks, full):
    m = masks.size
    for i in range(m - 1):
        a = masks[i]
        rest = masks[i + 1:]
        cnt = (
            _contains_vec(masks, rest & a).astype(np.int8)
            + _contains_vec(masks, rest | a)
            + _contains_vec(masks, a & ~rest)
            + _contains_vec(masks, rest & ~a)
        )
        bad = cnt < 2
        if bad.any():
            j = int(np.argmax(bad))
            return int(a), int(masks[i + 1 + j])
    return -1, -1


def structsub_violation(masks, full):
    m = masks.size
    for i in range(m - 1):
        a = masks[i]
        rest = masks[i + 1:]
        inter = rest & a
        dab = a & ~rest
        dba = rest & ~a
        outer = full & ~(rest | a)
        crossing = (inter != 0) & (dab != 0) & (dba != 0) & (outer != 0)
        if not crossing.any():
            continue
        ok = (_contains_vec(masks, inter) | _contains_vec(masks, rest | a)) & (
            _contains_vec(masks, dab) | _contains_vec(masks, dba)
        )
        bad = crossing & ~ok
        if bad.any():
            j = int(np.argmax(bad))
            return int(a), int(masks[i + 1 + j])
    return -1, -1


def sparse_crossing_violation(masks, minimal, full):
    core_masks = masks[minimal]
    if core_masks.size == 0:
        return -1, -1, -1
    for i in range(masks.size):
        s = masks[i]
        crossing = (
            ((s & core_masks) != 0)
            & ((s & ~core_masks) != 0)
            & ((core_masks & ~s) != 0)
            & ((full & ~(s | core_masks)) != 0)
        )
        if crossing.sum() >= 2:
            first, second = np.flatnonzero(crossing)[:2]
            return int(s), int(core_masks[first]), int(core_masks[second])
    return -1, -1, -1
