"""Personalized PageRank: damped walk fixed point pi = alpha P pi + (1-alpha) v.

pagerank_power iterates from pi_0 = v and contracts in L1 at rate alpha;
pagerank_dense_oracle solves the resolvent system (I - alpha P) pi =
(1 - alpha) v directly and is the independent check the iteration is tested
against. alpha = 1 is excluded everywhere: the undamped limit is covered by
stationary_distribution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DenseSizeError,
    EmptySetError,
    InvalidParameterError,
    MaxIterationsError,
    ProbabilityVectorError,
    VertexOutOfRangeError,
)
from .graph_core import apply_P

__all__ = [
    "PageRankConfig",
    "PageRankResult",
    "pagerank_power",
    "pagerank_dense_oracle",
    "as_probability_vector",
    "preference_uniform",
    "preference_unit",
    "preference_set",
    "write_vector",
    "read_vector",
]

DENSE_ORACLE_CUTOFF = 4096
_SUM_TOL = 1e-12


def as_probability_vector(x, n=None):
    """Validate nonnegative entries summing to 1 within 1e-12; returns float64."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ProbabilityVectorError(f"expected a 1-d vector, got shape {x.shape}")
    if n is not None and x.size != n:
        raise ProbabilityVectorError(f"expected length {n}, got {x.size}")
    if not np.isfinite(x).all() or (x < 0).any():
        raise ProbabilityVectorError("entries must be finite and nonnegative")
    s = float(x.sum())
    if abs(s - 1.0) > _SUM_TOL:
        raise ProbabilityVectorError(f"entries sum to {s!r}, not 1 within {_SUM_TOL}")
    return x


def preference_uniform(n):
    """Uniform preference 1/n."""
    if n < 1:
        raise InvalidParameterError(f"need n >= 1, got {n}")
    return np.full(n, 1.0 / n)


def preference_unit(n, k):
    """All mass on vertex k."""
    if n < 1:
        raise InvalidParameterError(f"need n >= 1, got {n}")
    if not 0 <= k < n:
        raise VertexOutOfRangeError(f"vertex {k} not in [0, {n})")
    v = np.zeros(n)
    v[k] = 1.0
    return v


def preference_set(n, vertices):
    """Uniform mass over a nonempty vertex set (duplicates collapse)."""
    if n < 1:
        raise InvalidParameterError(f"need n >= 1, got {n}")
    idx = np.unique(np.asarray(list(vertices), dtype=np.int64))
    if idx.size == 0:
        raise EmptySetError("preference set must be nonempty")
    if idx[0] < 0 or idx[-1] >= n:
        raise VertexOutOfRangeError(f"set contains a vertex outside [0, {n})")
    v = np.zeros(n)
    v[idx] = 1.0 / idx.size
    return v


@dataclass(frozen=True)
class PageRankConfig:
    """Damping alpha in [0, 1), L1 step tolerance, and an iteration cap.

    The default cap is ten times the geometric-decay forecast
    ceil(log(tol)/log(alpha)), never below 100.
    """

    alpha: float
    tol: float = 1e-12
    max_iter: int | None = None

    def __post_init__(self):
        if not 0.0 <= self.alpha < 1.0:
            raise InvalidParameterError(f"need 0 <= alpha < 1, got {self.alpha}")
        if not self.tol > 0.0:
            raise InvalidParameterError(f"need tol > 0, got {self.tol}")
        if self.max_iter is None:
            forecast = 0
            if self.alpha > 0.0:
                forecast = math.ceil(math.log(self.tol) / math.log(self.alpha))
            object.__setattr__(self, "max_iter", max(100, 10 * forecast))
        elif not (isinstance(self.max_iter, int) and self.max_iter >= 1):
            raise InvalidParameterError(f"need max_iter >= 1, got {self.max_iter!r}")


@dataclass(frozen=True)
class PageRankResult:
    vector: np.ndarray
    iterations: int
    final_residual: float


def pagerank_power(g, v, config):
    """Power iteration for the damped walk; needs every degree positive.

    Stops when the L1 step size reaches config.tol, then renormalizes the
    iterate to sum exactly 1 (rounding drift only; the update conserves
    mass). Raises MaxIterationsError with the best iterate attached if the
    cap is hit first.
    """
    v = as_probability_vector(v, g.n)
    alpha = config.alpha
    pi = v.copy()
    residual = math.inf
    for k in range(1, config.max_iter + 1):
        new = alpha * apply_P(g, pi)
        new += (1.0 - alpha) * v
        residual = float(np.abs(new - pi).sum())
        pi = new
        if residual <= config.tol:
            return PageRankResult(pi / pi.sum(), k, residual)
    raise MaxIterationsError(
        f"no convergence to {config.tol} within {config.max_iter} iterations",
        result=PageRankResult(pi / pi.sum(), config.max_iter, residual),
    )


def pagerank_dense_oracle(g, v, alpha):
    """Direct dense solve of (I - alpha P) pi = (1 - alpha) v.

    Pivoted elimination on the materialized system; meant as a reference
    for graphs up to n = 4096, not as the production path.
    """
    if g.n > DENSE_ORACLE_CUTOFF:
        raise DenseSizeError(f"dense oracle capped at n = {DENSE_ORACLE_CUTOFF}, got {g.n}")
    if not 0.0 <= alpha < 1.0:
        raise InvalidParameterError(f"need 0 <= alpha < 1, got {alpha}")
    v = as_probability_vector(v, g.n)
    inv_deg, _ = g.degree_scaling()
    n = g.n
    system = np.eye(n)
    row = np.repeat(np.arange(n, dtype=np.int64), g.degrees)
    # P[i, j] = A[i, j] / d_j, subtracted in place to form I - alpha P
    system[g.indices.astype(np.int64), row] -= alpha * inv_deg[row]
    pi = np.linalg.solve(system, (1.0 - alpha) * v)
    return pi / pi.sum()


def write_vector(x, path):
    """One entry per line, shortest round-trip decimals."""
    with open(path, "w") as fh:
        for value in np.asarray(x, dtype=np.float64).tolist():
            fh.write(f"{value!r}\n")


def read_vector(path):
    """Parse a one-value-per-line distribution; renormalizes exactly.

    Import tolerance on the sum is 1e-9 (looser than the in-memory 1e-12)
    to absorb decimal files from other tools; the result is divided by its
    sum so downstream validation sees exactly 1.
    """
    values = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            values.append(float(line))
    x = np.array(values)
    if x.size == 0:
        raise ProbabilityVectorError(f"no values in {path}")
    if not np.isfinite(x).all() or (x < 0).any():
        raise ProbabilityVectorError("entries must be finite and nonnegative")
    s = float(x.sum())
    if abs(s - 1.0) > 1e-9:
        raise ProbabilityVectorError(f"entries sum to {s!r}, not 1 within 1e-9")
    return x / s
