"""Compiled kernels behind the CSR graph type.

The adjacency carries no value array (all edge weights are 1), so a matvec
only gathers. Per-row accumulation is sequential in index order, which keeps
results bit-reproducible run to run.
"""

from __future__ import annotations

import numba as nb
import numpy as np


@nb.njit(cache=True, nogil=True)
def csr_fill(n, lo, hi):
    """Build (indptr, indices) from unique edge pairs with lo < hi.

    Pairs must arrive sorted by (lo, hi); both directions then land in
    ascending column order without a per-row sort.
    """
    deg = np.zeros(n, np.int64)
    for k in range(lo.size):
        deg[lo[k]] += 1
        deg[hi[k]] += 1
    indptr = np.empty(n + 1, np.int64)
    indptr[0] = 0
    for i in range(n):
        indptr[i + 1] = indptr[i] + deg[i]
    indices = np.empty(indptr[n], np.int32)
    cursor = indptr[:n].copy()
    for k in range(lo.size):
        i = lo[k]
        j = hi[k]
        indices[cursor[i]] = j
        cursor[i] += 1
        indices[cursor[j]] = i
        cursor[j] += 1
    return indptr, indices


@nb.njit(cache=True, nogil=True)
def adj_matvec(indptr, indices, x, out):
    """out = A @ x for the 0/1 adjacency stored in (indptr, indices)."""
    for i in range(indptr.size - 1):
        s = 0.0
        for k in range(indptr[i], indptr[i + 1]):
            s += x[indices[k]]
        out[i] = s


@nb.njit(cache=True, nogil=True)
def bfs_reach(indptr, indices, start):
    """Number of vertices reachable from start, including start."""
    n = indptr.size - 1
    seen = np.zeros(n, nb.boolean)
    queue = np.empty(n, np.int64)
    seen[start] = True
    queue[0] = start
    head = 0
    tail = 1
    while head < tail:
        u = queue[head]
        head += 1
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            if not seen[v]:
                seen[v] = True
                queue[tail] = v
                tail += 1
    return tail
