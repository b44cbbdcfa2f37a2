"""Compiled kernels for subset-lattice sweeps.

Everything here walks all 2^n subsets of a small ground set, which is
the one place pure Python is too slow: rank tables feed the trellis
DPs, and the two graph tables realize exact treewidth (elimination
order over eliminated subsets) and exact pathwidth (vertex separation).
Masks stay below 2^24 so plain int64 arithmetic suffices.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, inline="always")
def _tz(x: int) -> int:
    c = 0
    while x & 1 == 0:
        x >>= 1
        c += 1
    return c


@njit(cache=True, inline="always")
def _popcount(x: int) -> int:
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def subset_rank_table(gen: np.ndarray, q: int, inv: np.ndarray) -> np.ndarray:
    """Rank of every column subset of gen, indexed by bitmask."""
    k, n = gen.shape
    size = 1 << n
    out = np.zeros(size, np.uint8)
    work = np.empty((k, n), np.int64)
    for mask in range(1, size):
        c = 0
        m = mask
        while m:
            j = _tz(m)
            m &= m - 1
            for i in range(k):
                work[i, c] = gen[i, j]
            c += 1
        r = 0
        for col in range(c):
            piv = -1
            for i in range(r, k):
                if work[i, col] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j2 in range(col, c):
                    tmp = work[r, j2]
                    work[r, j2] = work[piv, j2]
                    work[piv, j2] = tmp
            pinv = inv[work[r, col]]
            for j2 in range(col, c):
                work[r, j2] = (work[r, j2] * pinv) % q
            for i in range(r + 1, k):
                if work[i, col] != 0:
                    f = work[i, col]
                    for j2 in range(col, c):
                        work[i, j2] = (work[i, j2] - f * work[r, j2]) % q
            r += 1
            if r == k:
                break
        out[mask] = r
    return out


@njit(cache=True)
def treewidth_table(nbr: np.ndarray) -> np.ndarray:
    """f[S] = least max elimination degree over orders eliminating S first.

    For each S the vertices of one connected component of the induced
    subgraph share the same outside-neighborhood count, so the inner
    minimization needs one flood fill per component rather than per
    vertex.
    """
    n = nbr.shape[0]
    size = 1 << n
    f = np.empty(size, np.int8)
    f[0] = -1
    for s in range(1, size):
        best = 127
        rem = s
        while rem:
            v = _tz(rem)
            comp = 1 << v
            frontier = comp
            while True:
                nxt = 0
                fr = frontier
                while fr:
                    u = _tz(fr)
                    fr &= fr - 1
                    nxt |= nbr[u]
                nxt &= s
                nxt &= ~comp
                if nxt == 0:
                    break
                comp |= nxt
                frontier = nxt
            outn = 0
            cc = comp
            while cc:
                u = _tz(cc)
                cc &= cc - 1
                outn |= nbr[u]
            outn &= ~s
            deg = _popcount(outn)
            cc = comp
            while cc:
                u = _tz(cc)
                cc &= cc - 1
                sub = f[s ^ (1 << u)]
                val = sub if sub > deg else deg
                if val < best:
                    best = val
            rem &= ~comp
        f[s] = best
    return f


@njit(cache=True)
def pathwidth_table(nbr: np.ndarray) -> np.ndarray:
    """f[S] = least max boundary over orders placing S first (vertex separation)."""
    n = nbr.shape[0]
    size = 1 << n
    f = np.empty(size, np.int8)
    f[0] = 0
    for s in range(1, size):
        b = 0
        t = s
        while t:
            u = _tz(t)
            t &= t - 1
            if nbr[u] & ~s:
                b += 1
        best = 127
        t = s
        while t:
            u = _tz(t)
            t &= t - 1
            val = f[s ^ (1 << u)]
            if val < best:
                best = val
        f[s] = b if b > best else best
    return f
