"""Exact minimum distance, low-weight censuses and weight-enumerator classes.

The distance and census engines both work on a chain of pairwise disjoint
information sets S_1, S_2, ...  For every set the generator is reduced so
that r_j rows are unit vectors on S_j and the remaining k - r_j rows vanish
there (r_j < k is a rank deficit).  Enumerating all messages of weight at
most p over such a generator produces every codeword whose weight on S_j is
at most p - (k - r_j).
"""
from __future__ import annotations

import enum
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Callable

import numpy as np

from borderedsd import _kernels
from borderedsd.linalg import BinaryMatrix, pack_bits, rref
from borderedsd.selfdual import BinaryCode, CodeType

THREADS_ENV = "BORDEREDSD_THREADS"
EXHAUSTIVE_MAX_K = 34


class ClassificationError(ValueError):
    pass


def resolve_threads(threads: int | None = None) -> int:
    if threads is None:
        threads = int(os.environ.get(THREADS_ENV, "1") or 1)
    return max(1, int(threads))


def extremal_bound(length: int, code_type: CodeType) -> int:
    if length % 2:
        raise ValueError("self-dual codes have even length")
    base = 4 * (length // 24)
    if code_type is CodeType.TypeII:
        return base + 4
    if length % 24 == 0:
        return base + 2
    if length % 24 == 22:
        return base + 6
    return base + 4


@dataclass(frozen=True)
class InfoSet:
    cols: np.ndarray  # the information set S_j
    rest: np.ndarray  # all other columns, ascending
    rank: int
    rows: np.ndarray  # (k, words) packed bits of each row on `rest`
    piv: np.ndarray  # 1 where the row is a unit vector on S_j

    @property
    def k(self) -> int:
        return self.rows.shape[0]

    @property
    def deficit(self) -> int:
        return self.k - self.rank


def information_sets(code: BinaryCode) -> list[InfoSet]:
    """Greedy disjoint information sets; leftover columns are zero on the code."""
    G = code.generator.to_bits()
    k, n = G.shape
    out = []
    remaining = np.arange(n)
    while remaining.size and k:
        _, piv = rref(BinaryMatrix.from_bits(G[:, remaining]))
        if piv.size == 0:
            break
        cols = remaining[piv]
        rest = np.setdiff1d(np.arange(n), cols)
        red, _ = rref(BinaryMatrix.from_bits(G[:, np.concatenate([cols, rest])]))
        bits = red.to_bits()
        r = cols.size
        out.append(
            InfoSet(
                cols=cols,
                rest=rest,
                rank=r,
                rows=pack_bits(bits[:, r:]) if rest.size else np.zeros((k, 1), np.uint64),
                piv=np.array([1] * r + [0] * (k - r), np.int64),
            )
        )
        remaining = np.setdiff1d(remaining, cols)
    return out


def _mask_on(info: InfoSet, cols: np.ndarray) -> np.ndarray:
    bits = np.isin(info.rest, cols).astype(np.uint8)
    return pack_bits(bits[None, :])[0] if info.rest.size else np.zeros(1, np.uint64)


def _run_shards(jobs: list[Callable[[], np.ndarray]], threads: int) -> np.ndarray:
    if threads <= 1 or len(jobs) <= 1:
        return sum((job() for job in jobs), start=np.int64(0))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(lambda job: job(), jobs))
    return sum(results, start=np.int64(0))


def enumerate_level(
    info: InfoSet,
    w: int,
    wcap: int,
    q: int | None = None,
    exclusions: list[tuple[np.ndarray, int]] = (),
    threads: int = 1,
) -> np.ndarray:
    """Weight histogram (0..wcap) of codewords from messages of weight exactly w.

    Codewords whose weight on the information set exceeds ``q`` are dropped,
    and so is every codeword with masked weight <= threshold for some
    ``(mask, threshold)`` in ``exclusions``.  Work is sharded by the index of
    the first selected row; shard histograms add up, so the result does not
    depend on ``threads``.
    """
    k = info.k
    q = k if q is None else q
    if w > k:
        return np.zeros(wcap + 1, np.int64)
    fast = info.rows.shape[1] == 1 and info.deficit == 0 and len(exclusions) <= 1
    if fast:
        rows = np.ascontiguousarray(info.rows[:, 0])
        if exclusions:
            emask, eq = np.uint64(exclusions[0][0][0]), int(exclusions[0][1])
            if info.rest.size < 64 and emask == np.uint64((1 << info.rest.size) - 1):
                # the filter covers every stored bit; lets the kernel share one popcount
                emask = np.uint64(0xFFFFFFFFFFFFFFFF)
        else:
            emask, eq = np.uint64(0), -1
        if w > q:
            return np.zeros(wcap + 1, np.int64)

        def shard(c0):
            hist = np.zeros(wcap + 1, np.int64)
            if c0 < 0:
                _kernels.level_fast(rows, 0, np.uint64(0), 0, 0, emask, eq, wcap, hist)
            else:
                _kernels.level_fast(rows, c0 + 1, rows[c0], w - 1, w, emask, eq, wcap, hist)
            return hist

    else:
        rows = np.ascontiguousarray(info.rows)
        nw = rows.shape[1]
        masks = np.zeros((len(exclusions), nw), np.uint64)
        mq = np.zeros(len(exclusions), np.int64)
        for e, (mask, thr) in enumerate(exclusions):
            masks[e] = mask
            mq[e] = thr

        def shard(c0):
            hist = np.zeros(wcap + 1, np.int64)
            if c0 < 0:
                base = np.zeros(nw, np.uint64)
                _kernels.level_generic(rows, info.piv, 0, base, 0, 0, q, masks, mq, wcap, hist)
            else:
                _kernels.level_generic(
                    rows, info.piv, c0 + 1, rows[c0].copy(), int(info.piv[c0]), w - 1, q, masks, mq, wcap, hist
                )
            return hist

    if w == 0:
        return shard(-1)
    jobs = [(lambda c0=c0: shard(c0)) for c0 in range(k - w + 1)]
    return _run_shards(jobs, threads)


@dataclass
class BZStep:
    set_index: int
    level: int
    lower: int
    upper: int


def _lower_bound(levels: list[int], sets: list[InfoSet]) -> int:
    return sum(max(0, p - s.deficit + 1) for p, s in zip(levels, sets))


def min_distance_bz(
    code: BinaryCode,
    abort_below: int | None = None,
    threads: int | None = None,
    trace: list[BZStep] | None = None,
) -> int:
    """Brouwer-Zimmermann minimum distance.

    Levels are raised one information set at a time, always choosing the
    cheapest step that raises the lower bound.  With ``abort_below`` the
    search stops as soon as a codeword lighter than that is found and returns
    its weight (an upper bound on the distance).
    """
    if code.k == 0:
        raise ValueError("the zero code has no minimum distance")
    threads = resolve_threads(threads)
    sets = information_sets(code)
    n, k = code.length, code.k
    upper = int(code.generator.to_bits().sum(axis=1).min())
    levels = [0] * len(sets)
    lower = _lower_bound(levels, sets)
    while lower < upper:
        if abort_below is not None and upper < abort_below:
            return upper
        best = None
        for j, s in enumerate(sets):
            if levels[j] >= k:
                continue
            target = max(levels[j] + 1, s.deficit)
            cost = sum(comb(k, w) for w in range(levels[j] + 1, min(target, k) + 1))
            if best is None or cost < best[0]:
                best = (cost, j, min(target, k))
        if best is None:
            break
        _, j, target = best
        for w in range(levels[j] + 1, target + 1):
            hist = enumerate_level(sets[j], w, n, threads=threads)
            nz = np.flatnonzero(hist[1:])
            if nz.size:
                upper = min(upper, int(nz[0]) + 1)
            levels[j] = w
            lower = _lower_bound(levels, sets)
            if trace is not None:
                trace.append(BZStep(j, w, lower, upper))
    return upper


def weight_distribution(code: BinaryCode, threads: int | None = None) -> np.ndarray:
    """All A_w, w = 0..length, by Gray-code walk over the 2^k messages."""
    k, n = code.k, code.length
    if k > EXHAUSTIVE_MAX_K:
        raise ValueError(f"k={k} is too large for exhaustive enumeration (max {EXHAUSTIVE_MAX_K})")
    threads = resolve_threads(threads)
    rows = np.ascontiguousarray(code.generator.data)
    nw = rows.shape[1]
    nlow = min(k, 22)
    top = rows[nlow:]

    def shard(s):
        hist = np.zeros(max(n, 64 * nw) + 1, np.int64)
        base = np.zeros(nw, np.uint64)
        for i in range(top.shape[0]):
            if (s >> i) & 1:
                base ^= top[i]
        if nw == 1:
            _kernels.gray_walk_fast(np.ascontiguousarray(rows[:nlow, 0]), nlow, base[0], hist)
        elif nw == 2:
            _kernels.gray_walk_2(np.ascontiguousarray(rows[:nlow]), nlow, base, hist)
        else:
            _kernels.gray_walk(rows[:nlow], nlow, base, hist)
        return hist

    jobs = [(lambda s=s: shard(s)) for s in range(1 << top.shape[0])]
    return _run_shards(jobs, threads)[: n + 1]


def min_distance_exhaustive(code: BinaryCode, threads: int | None = None) -> int:
    if code.k == 0:
        raise ValueError("the zero code has no minimum distance")
    dist = weight_distribution(code, threads)
    return int(np.flatnonzero(dist[1:])[0]) + 1


@dataclass(frozen=True)
class WeightProfile:
    length: int
    k: int
    min_distance: int | None
    census: dict[int, int]
    cutoff: int

    def A(self, w: int) -> int:
        if w > self.cutoff:
            raise KeyError(f"A_{w} is beyond the census cutoff {self.cutoff}")
        return self.census.get(w, 0)

    def fingerprint(self) -> tuple:
        return (self.min_distance, tuple(sorted(self.census.items())))


def census_plan(sets: list[InfoSet], wmax: int) -> list[int]:
    """Per-set caps q_j on information-set weight, with sum(q_j + 1) > wmax.

    Each step raises the cap whose next level is cheapest.  A cap of -1
    leaves the set unused.
    """
    if not sets:
        return []
    k = sets[0].k
    caps = [-1] * len(sets)

    def cost(j, q):
        top = min(k, q + sets[j].deficit)
        return sum(comb(k, w) for w in range(top + 1)) if q >= 0 else 0

    while sum(c + 1 for c in caps) <= wmax:
        options = [
            (cost(j, caps[j] + 1) - cost(j, caps[j]), j) for j in range(len(sets)) if caps[j] < sets[j].rank
        ]
        if not options:
            break
        _, j = min(options)
        caps[j] += 1
    return caps


def low_weight_census(code: BinaryCode, wmax: int, threads: int | None = None) -> WeightProfile:
    """Exact A_w for every w <= wmax.

    A codeword of weight <= wmax has weight <= q_j on some S_j.  Set j counts
    the codewords with weight <= q_j on S_j and weight > q_i on every earlier
    S_i, so each codeword is counted exactly once without a hash table.
    """
    n, k = code.length, code.k
    if wmax > n:
        raise ValueError(f"wmax={wmax} exceeds the length {n}")
    threads = resolve_threads(threads)
    census = np.zeros(wmax + 1, np.int64)
    sets = information_sets(code)
    caps = census_plan(sets, wmax)
    for j, (s, q) in enumerate(zip(sets, caps)):
        if q < 0:
            continue
        exclusions = [(_mask_on(s, sets[i].cols), caps[i]) for i in range(j) if caps[i] >= 0]
        for w in range(0, min(k, q + s.deficit) + 1):
            census += enumerate_level(s, w, wmax, q=q, exclusions=exclusions, threads=threads)
    if not sets:
        census[0] = 1
    counts = {w: int(c) for w, c in enumerate(census) if c}
    nz = [w for w in counts if w > 0]
    return WeightProfile(n, k, min(nz) if nz else None, counts, wmax)


# --- weight-enumerator families -------------------------------------------

@dataclass(frozen=True)
class EnumeratorClass:
    length: int
    family: int | None
    alpha: int | None
    beta: int | None = None


CLASSIFYING_WEIGHT = {54: 12, 68: 14, 82: 18, 94: 20}
_FAMILY_DISTANCE = {54: 10, 68: 12, 82: 14, 94: 16}


def _exact(num: int, den: int, what: str) -> int:
    if num % den:
        raise ClassificationError(f"{what} = {num}/{den} is not an integer")
    return num // den


def classify_enumerator(profile: WeightProfile, partial: bool = False) -> EnumeratorClass:
    """Read (family, alpha, beta) off the low-weight coefficients.

    With ``partial`` a census that stops short of the family-deciding
    coefficient still yields alpha and beta, with ``family=None``.
    """
    n = profile.length
    if n not in CLASSIFYING_WEIGHT:
        raise ClassificationError(f"no enumerator families for length {n}")
    need = CLASSIFYING_WEIGHT[n] - (2 if partial else 0)
    if profile.cutoff < need:
        raise ClassificationError(f"census to {profile.cutoff} is too shallow; need {need}")
    d = _FAMILY_DISTANCE[n]
    if any(profile.A(w) for w in range(1, d)):
        raise ClassificationError(f"codewords below weight {d}; no family applies")
    A = profile.A
    decided = profile.cutoff >= CLASSIFYING_WEIGHT[n]

    if n == 54:
        alpha = _exact(351 - A(10), 8, "alpha")
        for j, const in ((1, 5031), (2, 5543)):
            if A(12) == const + 24 * alpha:
                return EnumeratorClass(n, j, alpha)
        raise ClassificationError(f"A12={A(12)} matches neither W54 family for alpha={alpha}")

    if n == 68:
        alpha = _exact(A(12) - 442, 4, "alpha")
        if A(14) == 10864 - 8 * alpha:
            return EnumeratorClass(n, 1, alpha)
        beta = _exact(14960 - 8 * alpha - A(14), 256, "beta")
        return EnumeratorClass(n, 2, alpha, beta)

    if n == 82:
        if A(14) == 560 and A(16) == 60724 and (not decided or A(18) == 233545):
            return EnumeratorClass(n, 1, None, None)
        alpha = _exact(A(14) - 3280, 2, "alpha")
        beta = _exact(A(16) - 36244 + 2 * alpha, 128, "beta")
        if not decided:
            return EnumeratorClass(n, None, alpha, beta)
        for j, const in ((2, 506153), (3, 514345)):
            if A(18) == const - 26 * alpha - 896 * beta:
                return EnumeratorClass(n, j, alpha, beta)
        raise ClassificationError(f"A18={A(18)} matches no W82 family")

    alpha = _exact(A(16), 2, "alpha")
    beta = _exact(A(18) - 134044 + 2 * alpha, 128, "beta")
    if not decided:
        return EnumeratorClass(n, None, alpha, beta)
    for j, const in ((1, 2010660), (2, 2018852), (3, 2190884)):
        if A(20) == const - 30 * alpha - 896 * beta:
            return EnumeratorClass(n, j, alpha, beta)
    raise ClassificationError(f"A20={A(20)} matches no W94 family")
