"""Vectorized witness-claim greedy for large 2-part set-world universes.

The word stream is a seeded permutation of all ordered (A, B) index pairs;
the copy with min(A) > min(B) is dropped, which leaves each unordered word
exactly once in permuted order.  Witnesses are encoded as integers into
dense claim arrays, so a chunk of words is screened with a handful of
numpy gathers and only the (rare) locally acceptable words fall back to
exact sequential resolution.  The contract matches the sequential witness
greedy: accepted words never share a witness, and every word of the
universe was examined, so the output is maximal.

Universes beyond the in-memory shuffle cap are permuted by a Feistel
network on the index space (images >= M are skipped, which still visits
each index exactly once).  The permutation is deterministic in the seed
and needs O(chunk) memory.
"""

from __future__ import annotations

import math
from itertools import combinations

import numpy as np

from .core import ParameterError
from .metric import witness_splits

SHUFFLE_CAP = 1 << 22
SPACE_CAP = 1 << 26
STREAM_CAP = 1 << 30
_CHUNK = 1 << 20


def applicable(n: int, k: int, d: int, space_cap: int = SPACE_CAP) -> bool:
    """True when the witness key spaces for (n, k, d) fit in dense arrays."""
    try:
        splits = witness_splits(k, d)
    except Exception:
        return False
    t = 2 * k - d + 1
    if math.comb(n, k) * math.comb(n - k, k) > STREAM_CAP:
        return False
    return len(splits) * n**t <= space_cap


def _feistel32(values: np.ndarray, nbits: int, keys: np.ndarray) -> np.ndarray:
    half = nbits // 2
    hmask = np.uint32((1 << half) - 1)
    left = (values >> np.uint32(half)).astype(np.uint32)
    right = (values & hmask).astype(np.uint32)
    for key in keys:
        mix = right * np.uint32(2654435761) + key
        mix ^= mix >> np.uint32(15)
        mix *= np.uint32(0x846CA68B)
        mix ^= mix >> np.uint32(13)
        left, right = right, left ^ (mix & hmask)
    return (left.astype(np.uint64) << np.uint64(half)) | right


def _feistel64(values: np.ndarray, nbits: int, keys: np.ndarray) -> np.ndarray:
    half = nbits // 2
    hmask = np.uint64((1 << half) - 1)
    left = values >> np.uint64(half)
    right = values & hmask
    for key in keys:
        mix = right * np.uint64(0x9E3779B97F4A7C15) + key
        mix ^= mix >> np.uint64(29)
        mix *= np.uint64(0xBF58476D1CE4E5B9)
        mix ^= mix >> np.uint64(32)
        left, right = right, left ^ (mix & hmask)
    return (left << np.uint64(half)) | right


def _permuted_chunks(m: int, seed: int, chunk: int):
    """Yield a seeded permutation of range(m) in chunks."""
    rng = np.random.default_rng(seed)
    if m <= SHUFFLE_CAP:
        perm = rng.permutation(m)
        for lo in range(0, m, chunk):
            yield perm[lo : lo + chunk].astype(np.uint64)
        return
    nbits = max(2, m.bit_length())
    if nbits % 2:
        nbits += 1
    domain = 1 << nbits
    if nbits <= 32:
        keys = rng.integers(0, 2**31, size=4, dtype=np.uint32)
        for lo in range(0, domain, chunk):
            block = np.arange(lo, min(lo + chunk, domain), dtype=np.uint32)
            vals = _feistel32(block, nbits, keys)
            vals = vals[vals < m]
            if vals.size:
                yield vals
    else:
        keys = rng.integers(0, 2**63, size=4, dtype=np.uint64)
        for lo in range(0, domain, chunk):
            block = np.arange(lo, min(lo + chunk, domain), dtype=np.uint64)
            vals = _feistel64(block, nbits, keys)
            vals = vals[vals < m]
            if vals.size:
                yield vals


def _unrank2(idx: np.ndarray, n: int) -> list[np.ndarray]:
    """Closed-form lex unranking of 2-combinations of [0, n).

    Row x (pairs with first element x) starts at T(x) = x(2n-x-1)/2; the
    quadratic root gives the row, one clamp step absorbs float error.
    """
    r = idx.astype(np.float64)
    a = np.floor((2 * n - 1 - np.sqrt((2 * n - 1) ** 2 - 8.0 * r)) / 2).astype(np.int64)
    start = a * (2 * n - a - 1) // 2
    # float roundoff can land one row off in either direction
    over = start > idx
    a = a - over
    start = a * (2 * n - a - 1) // 2
    under = idx.astype(np.int64) - start >= (n - 1 - a)
    a = a + under
    start = a * (2 * n - a - 1) // 2
    b = (idx.astype(np.int64) - start) + a + 1
    return [a, b]


def _unrank_tables(n: int, k: int) -> list[np.ndarray]:
    """Per-level cumulative counts for lex unranking of k-combinations of [0, n)."""
    tables = []
    for level in range(k):
        counts = [math.comb(n - 1 - j, k - 1 - level) for j in range(n)]
        tables.append(np.concatenate(([0], np.cumsum(counts))).astype(np.int64))
    return tables


def _unrank(idx: np.ndarray, tables: list[np.ndarray], k: int, n: int) -> list[np.ndarray]:
    if k == 2:
        return _unrank2(idx, n)
    cols = []
    rem = idx.astype(np.int64)
    prev = None
    for level in range(k):
        table = tables[level]
        goal = rem if prev is None else table[prev + 1] + rem
        col = np.searchsorted(table, goal, side="right").astype(np.int64) - 1
        rem = goal - table[col]
        cols.append(col)
        prev = col
    return cols


class _KeyBuilder:
    """Turns part element columns into witness key columns."""

    def __init__(self, n: int, k: int, d: int):
        self.n = n
        self.k = k
        self.splits = witness_splits(k, d)
        self.space = n ** (2 * k - d + 1)
        self.total_space = len(self.splits) * self.space
        self.plans = []
        for si, (u, v) in enumerate(self.splits):
            offset = si * self.space
            sides = ((0, 1),) if u == v else ((0, 1), (1, 0))
            for small_side, _ in sides:
                for uidx in combinations(range(self.k), u):
                    for vidx in combinations(range(self.k), v):
                        self.plans.append((offset, u == v, small_side, uidx, vidx))

    def build(self, a_cols: list[np.ndarray], b_cols: list[np.ndarray]) -> list[np.ndarray]:
        n = np.int64(self.n)
        sides = (a_cols, b_cols)

        def encode(cols: list[np.ndarray], idx: tuple[int, ...]):
            enc = np.int64(0)
            for pos in idx:
                enc = enc * n + cols[pos]
            return enc

        keys = []
        for offset, symmetric, small_side, uidx, vidx in self.plans:
            small = sides[small_side]
            large = sides[1 - small_side]
            enc_u = encode(small, uidx)
            enc_v = encode(large, vidx)
            if symmetric:
                enc_u, enc_v = np.minimum(enc_u, enc_v), np.maximum(enc_u, enc_v)
            shift = np.int64(self.n ** len(vidx))
            keys.append(enc_u * shift + enc_v + np.int64(offset))
        return keys


def greedy_pairs(n: int, k: int, d: int, seed: int, chunk: int = _CHUNK):
    """Run the witness-claim greedy; returns accepted (a_tuple, b_tuple) rows."""
    n_second = math.comb(n - k, k)
    m = math.comb(n, k) * n_second
    if m == 0:
        return []
    if m > STREAM_CAP:
        raise ParameterError(f"stream of {m} ordered words exceeds the cap {STREAM_CAP}")
    builder = _KeyBuilder(n, k, d)
    claimed = np.zeros(builder.total_space, dtype=bool)
    tables_a = _unrank_tables(n, k) if k != 2 else None
    tables_b = _unrank_tables(n - k, k) if k != 2 else None
    accepted: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    for ids in _permuted_chunks(m, seed, chunk):
        idx_a, idx_b = np.divmod(ids.astype(np.int64), np.int64(n_second))
        a_cols = _unrank(idx_a, tables_a, k, n)
        b_cols = _unrank(idx_b, tables_b, k, n - k)
        # lift B out of the complement of A (shifts applied in ascending-A order)
        for aj in a_cols:
            for i in range(k):
                b_cols[i] = b_cols[i] + (b_cols[i] >= aj)
        keep = a_cols[0] < b_cols[0]
        if not keep.any():
            continue
        a_cols = [c[keep] for c in a_cols]
        b_cols = [c[keep] for c in b_cols]
        keys = builder.build(a_cols, b_cols)
        blocked = claimed[keys[0]]
        for key in keys[1:]:
            blocked |= claimed[key]
        for i in np.flatnonzero(~blocked):
            row = [int(key[i]) for key in keys]
            if any(claimed[x] for x in row):
                continue
            for x in row:
                claimed[x] = True
            accepted.append(
                (
                    tuple(int(c[i]) for c in a_cols),
                    tuple(int(c[i]) for c in b_cols),
                )
            )
    return accepted
