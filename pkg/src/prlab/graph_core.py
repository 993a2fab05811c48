"""Undirected simple graphs in CSR form with matrix-free walk operators.

The random-walk matrix P = A D^-1 is column-stochastic; its symmetric
companion Q = D^-1/2 A D^-1/2 has the same spectrum and is the object all
spectral diagnostics work on. Neither matrix is ever materialized here:
apply_P and apply_Q run off the adjacency alone.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .errors import (
    DisconnectedGraphError,
    DuplicateEdgeError,
    LengthMismatchError,
    SelfLoopError,
    VertexOutOfRangeError,
    ZeroDegreeError,
)

__all__ = [
    "Graph",
    "build_graph",
    "apply_P",
    "apply_Q",
    "is_connected",
    "stationary_distribution",
    "write_edge_list",
    "read_edge_list",
]

_MAX_N = 2**31 - 1  # indices are int32


class Graph:
    """Immutable undirected simple graph.

    Storage is compressed sparse row over both directions of every edge,
    with neighbor lists in ascending order. Construct through build_graph
    or a generator, not directly.
    """

    __slots__ = ("n", "indptr", "indices", "degrees", "_inv_deg", "_inv_sqrt_deg")

    def __init__(self, n, indptr, indices):
        self.n = int(n)
        indptr.flags.writeable = False
        indices.flags.writeable = False
        self.indptr = indptr
        self.indices = indices
        degrees = np.diff(indptr)
        degrees.flags.writeable = False
        self.degrees = degrees
        self._inv_deg = None
        self._inv_sqrt_deg = None

    @property
    def edge_count(self):
        return self.indices.size // 2

    @property
    def volume(self):
        """Sum of degrees, i.e. twice the edge count."""
        return int(self.indices.size)

    @property
    def min_degree(self):
        return int(self.degrees.min()) if self.n else 0

    def neighbors(self, i):
        """Ascending neighbor ids of vertex i (a read-only view)."""
        if not 0 <= i < self.n:
            raise VertexOutOfRangeError(f"vertex {i} not in [0, {self.n})")
        return self.indices[self.indptr[i] : self.indptr[i + 1]]

    def degree_scaling(self):
        """(1/d, 1/sqrt(d)) vectors, cached; requires all degrees positive."""
        if self._inv_deg is None:
            d = self.degrees
            if self.n and d.min() == 0:
                bad = int(np.argmin(d))
                raise ZeroDegreeError(f"vertex {bad} has degree 0")
            df = d.astype(np.float64)
            self._inv_deg = 1.0 / df
            self._inv_sqrt_deg = 1.0 / np.sqrt(df)
        return self._inv_deg, self._inv_sqrt_deg

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edge_count})"


def _from_sorted_pairs(n, lo, hi):
    """Fast construction from validated pairs: lo < hi, unique, sorted by (lo, hi)."""
    indptr, indices = _kernels.csr_fill(
        n, np.ascontiguousarray(lo, np.int64), np.ascontiguousarray(hi, np.int64)
    )
    return Graph(n, indptr, indices)


def build_graph(n, edge_list):
    """Validate an edge list and build the CSR graph.

    Parameters
    ----------
    n : int
        Vertex count; vertices are 0..n-1.
    edge_list : array-like of shape (m, 2)
        Undirected edges, one orientation each. Rejects out-of-range
        endpoints, self loops, and duplicates in either orientation.
    """
    n = int(n)
    if n < 0:
        raise VertexOutOfRangeError(f"vertex count must be nonnegative, got {n}")
    if n > _MAX_N:
        raise VertexOutOfRangeError(f"vertex count {n} exceeds int32 index range")
    edges = np.asarray(list(edge_list) if not isinstance(edge_list, np.ndarray) else edge_list)
    if edges.size == 0:
        return Graph(n, np.zeros(n + 1, np.int64), np.empty(0, np.int32))
    if edges.ndim != 2 or edges.shape[1] != 2:
        raise LengthMismatchError(f"edge list must have shape (m, 2), got {edges.shape}")
    if not np.issubdtype(edges.dtype, np.integer):
        raise VertexOutOfRangeError("edge endpoints must be integers")
    edges = edges.astype(np.int64, copy=False)
    if edges.min() < 0 or edges.max() >= n:
        bad = edges[(edges < 0).any(axis=1) | (edges >= n).any(axis=1)][0]
        raise VertexOutOfRangeError(f"edge {tuple(bad)} has endpoint outside [0, {n})")
    a, b = edges[:, 0], edges[:, 1]
    loops = a == b
    if loops.any():
        raise SelfLoopError(f"self loop at vertex {int(a[np.argmax(loops)])}")
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    # one sortable key per unordered pair; n <= 2^31 keeps lo*n + hi inside int64
    key = np.sort(lo * n + hi)
    dup = key[1:] == key[:-1]
    if dup.any():
        k = int(key[np.argmax(dup)])
        raise DuplicateEdgeError(f"edge ({k // n}, {k % n}) appears more than once")
    return _from_sorted_pairs(n, key // n, key % n)


def apply_P(g, x):
    """Multiply by the column-stochastic walk matrix: y = A (x / d)."""
    x = _check_vector(g, x)
    inv_deg, _ = g.degree_scaling()
    out = np.empty(g.n)
    _kernels.adj_matvec(g.indptr, g.indices, x * inv_deg, out)
    return out


def apply_Q(g, x):
    """Multiply by the symmetric walk companion: y = D^-1/2 A D^-1/2 x."""
    x = _check_vector(g, x)
    _, inv_sqrt = g.degree_scaling()
    out = np.empty(g.n)
    _kernels.adj_matvec(g.indptr, g.indices, x * inv_sqrt, out)
    out *= inv_sqrt
    return out


def _check_vector(g, x):
    x = np.ascontiguousarray(x, dtype=np.float64)
    if x.shape != (g.n,):
        raise LengthMismatchError(f"vector of shape {x.shape} against graph with n={g.n}")
    return x


def is_connected(g):
    """BFS connectivity; the empty graph counts as connected."""
    if g.n == 0:
        return True
    return _kernels.bfs_reach(g.indptr, g.indices, 0) == g.n


def stationary_distribution(g):
    """Stationary distribution d / vol of the undamped walk.

    Requires a connected graph with every degree positive (a lone vertex
    has no stationary walk).
    """
    if g.n == 0:
        return np.empty(0)
    if not is_connected(g):
        raise DisconnectedGraphError("stationary distribution needs a connected graph")
    if g.min_degree == 0:
        raise ZeroDegreeError("stationary distribution needs positive degrees")
    return g.degrees / g.volume


def write_edge_list(g, path):
    """Write one 'i j' line per undirected edge, i < j ascending.

    A leading '# n <N>' comment records the vertex count so graphs with
    trailing isolated vertices survive a round trip; readers that skip
    comments are unaffected.
    """
    row = np.repeat(np.arange(g.n, dtype=np.int64), g.degrees)
    keep = g.indices > row
    pairs = np.column_stack([row[keep], g.indices[keep]])
    with open(path, "w") as fh:
        fh.write(f"# n {g.n}\n")
        np.savetxt(fh, pairs, fmt="%d")


def read_edge_list(path, n=None):
    """Parse an edge-list file back into a validated Graph.

    Lines starting with '#' are ignored, except that a '# n <N>' header is
    honored when the caller does not pass n. Without either, n is inferred
    as the largest endpoint plus one.
    """
    pairs = []
    header_n = None
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                fields = line[1:].split()
                if header_n is None and len(fields) == 2 and fields[0] == "n":
                    try:
                        header_n = int(fields[1])
                    except ValueError:
                        pass
                continue
            fields = line.split()
            if len(fields) != 2:
                raise LengthMismatchError(f"expected 'i j' per line, got {line!r}")
            pairs.append((int(fields[0]), int(fields[1])))
    if n is None:
        n = header_n
    if n is None:
        n = 1 + max((max(p) for p in pairs), default=-1)
    return build_graph(n, np.array(pairs, dtype=np.int64).reshape(-1, 2))
