"""Compiled inner loops: packed GF(2) elimination and codeword enumeration.

All enumeration kernels release the GIL so callers can shard work over a
thread pool.  Histograms are written into caller-owned arrays.
"""
from __future__ import annotations

import numpy as np
from numba import njit

_U1 = np.uint64(1)
_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_ALL = np.uint64(0xFFFFFFFFFFFFFFFF)


@njit(inline="always")
def popcount64(x):
    x = x - ((x >> np.uint64(1)) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return np.int64((x * _H01) >> np.uint64(56))


@njit(cache=True)
def rref_inplace(data, ncols):
    """Reduced row echelon form of packed rows; returns the pivot columns."""
    nrows, nwords = data.shape
    pivots = np.empty(min(nrows, ncols), np.int64)
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        w = col >> 6
        bit = _U1 << np.uint64(col & 63)
        piv = -1
        for r in range(rank, nrows):
            if data[r, w] & bit:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for c in range(nwords):
                tmp = data[piv, c]
                data[piv, c] = data[rank, c]
                data[rank, c] = tmp
        for r in range(nrows):
            if r != rank and (data[r, w] & bit):
                for c in range(nwords):
                    data[r, c] ^= data[rank, c]
        pivots[rank] = col
        rank += 1
    return pivots[:rank].copy()


@njit(inline="always")
def _tally_fast(x, t, excl_mask, excl_q, wcap, hist):
    if excl_q < 0:
        wt = t + popcount64(x)
        if wt <= wcap:
            hist[wt] += 1
    elif excl_mask == _ALL:
        c = popcount64(x)
        if c > excl_q and t + c <= wcap:
            hist[t + c] += 1
    elif popcount64(x & excl_mask) > excl_q:
        wt = t + popcount64(x)
        if wt <= wcap:
            hist[wt] += 1


@njit(cache=True, nogil=True)
def level_fast(rows, lo, base, m, t, excl_mask, excl_q, wcap, hist):
    """Tally XORs of ``base`` with every m-subset of ``rows[lo:]``.

    Single-word codewords.  The weight of a tallied word is ``t`` plus its
    popcount; words with ``popcount(x & excl_mask) <= excl_q`` are skipped
    (``excl_q < 0`` disables the filter).  The two innermost combination
    levels are explicit loops; the outer ones advance lexicographically.
    """
    k = rows.shape[0]
    if k - lo < m:
        return
    if m == 0:
        _tally_fast(base, t, excl_mask, excl_q, wcap, hist)
        return
    if m == 1:
        for j in range(lo, k):
            _tally_fast(base ^ rows[j], t, excl_mask, excl_q, wcap, hist)
        return
    outer = m - 2
    idx = np.empty(max(outer, 1), np.int64)
    part = np.empty(outer + 1, np.uint64)
    for d in range(outer):
        idx[d] = lo + d
    part[0] = base
    for d in range(1, outer + 1):
        part[d] = part[d - 1] ^ rows[idx[d - 1]]
    while True:
        p = part[outer]
        start = idx[outer - 1] + 1 if outer > 0 else lo
        for j1 in range(start, k - 1):
            p1 = p ^ rows[j1]
            if excl_q < 0:
                for j2 in range(j1 + 1, k):
                    wt = t + popcount64(p1 ^ rows[j2])
                    if wt <= wcap:
                        hist[wt] += 1
            elif excl_mask == _ALL:
                for j2 in range(j1 + 1, k):
                    c = popcount64(p1 ^ rows[j2])
                    if c > excl_q and t + c <= wcap:
                        hist[t + c] += 1
            else:
                for j2 in range(j1 + 1, k):
                    _tally_fast(p1 ^ rows[j2], t, excl_mask, excl_q, wcap, hist)
        if outer == 0:
            return
        d = outer - 1
        while d >= 0 and idx[d] == k - m + d:
            d -= 1
        if d < 0:
            return
        idx[d] += 1
        for e in range(d + 1, outer):
            idx[e] = idx[e - 1] + 1
        for e in range(d + 1, outer + 1):
            part[e] = part[e - 1] ^ rows[idx[e - 1]]


@njit(inline="always")
def _tally_generic(x, t, q, masks, mq, wcap, hist):
    if t > q:
        return
    nw = x.shape[0]
    for e in range(masks.shape[0]):
        c = 0
        for w in range(nw):
            c += popcount64(x[w] & masks[e, w])
        if c <= mq[e]:
            return
    wt = t
    for w in range(nw):
        wt += popcount64(x[w])
    if wt <= wcap:
        hist[wt] += 1


@njit(cache=True, nogil=True)
def level_generic(rows, piv, lo, base, base_t, m, q, masks, mq, wcap, hist):
    """Multi-word variant of :func:`level_fast`.

    ``piv[j]`` is 1 when row j is a unit vector on the (dropped) information
    set; the information-set weight ``t`` is the number of such rows chosen
    and words with ``t > q`` are skipped.  Every ``masks[e]`` filter skips
    words whose masked popcount is at most ``mq[e]``.
    """
    k, nw = rows.shape
    x = np.empty(nw, np.uint64)
    if m == 0:
        _tally_generic(base, base_t, q, masks, mq, wcap, hist)
        return
    if k - lo < m:
        return
    idx = np.empty(m, np.int64)
    part = np.empty((m, nw), np.uint64)
    tpart = np.empty(m, np.int64)
    for d in range(m):
        idx[d] = lo + d
    for w in range(nw):
        part[0, w] = base[w]
    tpart[0] = base_t
    for d in range(1, m):
        for w in range(nw):
            part[d, w] = part[d - 1, w] ^ rows[idx[d - 1], w]
        tpart[d] = tpart[d - 1] + piv[idx[d - 1]]
    last = m - 1
    while True:
        for j in range(idx[last], k):
            for w in range(nw):
                x[w] = part[last, w] ^ rows[j, w]
            _tally_generic(x, tpart[last] + piv[j], q, masks, mq, wcap, hist)
        d = last - 1
        while d >= 0 and idx[d] == k - m + d:
            d -= 1
        if d < 0:
            return
        idx[d] += 1
        for e in range(d + 1, m):
            idx[e] = idx[e - 1] + 1
        for e in range(d + 1, m):
            for w in range(nw):
                part[e, w] = part[e - 1, w] ^ rows[idx[e - 1], w]
            tpart[e] = tpart[e - 1] + piv[idx[e - 1]]


@njit(cache=True, nogil=True)
def gray_walk(rows, nlow, base, hist):
    """Weight histogram of ``base`` XOR every combination of ``rows[:nlow]``.

    Visits the 2**nlow words in Gray-code order, one row XOR per step.
    """
    nw = rows.shape[1]
    x = base.copy()
    wt = 0
    for w in range(nw):
        wt += popcount64(x[w])
    hist[wt] += 1
    total = np.int64(1) << nlow
    for i in range(1, total):
        bit = 0
        v = i
        while (v & 1) == 0:
            v >>= 1
            bit += 1
        wt = 0
        for w in range(nw):
            x[w] ^= rows[bit, w]
            wt += popcount64(x[w])
        hist[wt] += 1


@njit(cache=True, nogil=True)
def gray_walk_fast(rows, nlow, base, hist):
    x = base
    hist[popcount64(x)] += 1
    total = np.int64(1) << nlow
    for i in range(1, total):
        bit = 0
        v = i
        while (v & 1) == 0:
            v >>= 1
            bit += 1
        x ^= rows[bit]
        hist[popcount64(x)] += 1


@njit(cache=True, nogil=True)
def gray_walk_2(rows, nlow, base, hist):
    """:func:`gray_walk` for two-word codewords (lengths 65 to 128)."""
    x0 = base[0]
    x1 = base[1]
    hist[popcount64(x0) + popcount64(x1)] += 1
    # ctz of 1..255 comes from a table; larger steps fall back to the loop
    ctz = np.zeros(256, np.int64)
    for i in range(1, 256):
        v = i
        while (v & 1) == 0:
            v >>= 1
            ctz[i] += 1
    r0 = rows[:, 0].copy()
    r1 = rows[:, 1].copy()
    total = np.int64(1) << nlow
    for i in range(1, total):
        low = i & 255
        if low:
            bit = ctz[low]
        else:
            bit = 8
            v = i >> 8
            while (v & 1) == 0:
                v >>= 1
                bit += 1
        x0 ^= r0[bit]
        x1 ^= r1[bit]
        hist[popcount64(x0) + popcount64(x1)] += 1
