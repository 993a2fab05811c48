"""Matrix-free spectral estimates for the normalized adjacency.

Everything here runs on symmetric operators, so the spectral norm equals
the extreme eigenvalue magnitude and plain power iteration suffices: the
estimate at a unit vector x is ||Op x||, the square root of the Rayleigh
quotient of the squared operator.  That form is exact on the invariant
subspace of a +lambda / -lambda pair, so a bipartite-style near tie
between the top and bottom eigenvalues does not stall convergence.  The
estimate climbs monotonically, which makes the stopping rule (relative
change below tol on ten consecutive steps) reliable; the distance still
to go can exceed the last step by the reciprocal relative eigengap, so
calibration tests drive with a tol well below what they assert.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .errors import (
    DenseSizeError,
    DisconnectedGraphError,
    EmptyGraphError,
    InvalidParameterError,
    LengthMismatchError,
    MaxIterationsError,
    ZeroDegreeError,
)
from .generators import SbmParams, Seed, WeightVector
from .graph_core import apply_Q, is_connected
from .pagerank import as_probability_vector

DENSE_SPECTRUM_CUTOFF = 512
_RESTART_NORM = 1e-8
_STREAK = 10


@dataclass(frozen=True)
class SpectralReport:
    """Spectral-gap estimate plus the degree diagnostics read off the same graph.

    lambda2_abs is the estimated magnitude of the extreme nontrivial
    eigenvalue; gap is 1 - lambda2_abs.  concentration_stat is None when no
    expected-degree vector was supplied.
    """

    lambda2_abs: float
    gap: float
    iterations: int
    residual: float
    degree_ratio: float
    concentration_stat: Optional[float]
    converged: bool


def _positive_weights(w, n):
    if isinstance(w, WeightVector):
        w = w.w
    w = np.asarray(w, dtype=np.float64)
    if w.shape != (n,):
        raise LengthMismatchError(f"expected {n} weights, got shape {w.shape}")
    if not np.all(w > 0):
        raise InvalidParameterError("weights must be positive")
    return w


def _deflate(x, u):
    """Remove the u component; u must be a unit vector."""
    return x - (u @ x) * u


def _adjacency_matvec(g, x):
    out = np.empty(g.n)
    _kernels.adj_matvec(g.indptr, g.indices, x, out)
    return out


def _norm_power(op, n, seed, tol, max_iter, project=None):
    """Spectral norm of a symmetric operator by power iteration.

    Returns (estimate, iterations, residual, converged).  The start vector
    is seeded uniform noise; if projection leaves it with norm below 1e-8
    the next stream is tried.
    """
    if tol <= 0:
        raise InvalidParameterError(f"tol must be positive, got {tol}")
    if max_iter < 1:
        raise InvalidParameterError(f"max_iter must be >= 1, got {max_iter}")
    x = None
    for attempt in range(64):
        cand = seed.derive(seed.stream + attempt).rng().uniform(-1.0, 1.0, n)
        if project is not None:
            cand = project(cand)
        norm = np.linalg.norm(cand)
        if norm >= _RESTART_NORM:
            x = cand / norm
            break
    if x is None:
        raise InvalidParameterError("could not find a usable start vector")
    estimate = 0.0
    residual = np.inf
    streak = 0
    iterations = 0
    converged = False
    for iterations in range(1, max_iter + 1):
        y = op(x)
        if project is not None:
            y = project(y)
        nxt = np.linalg.norm(y)
        if nxt == 0.0:
            estimate = 0.0
            residual = 0.0
            converged = True
            break
        residual = abs(nxt - estimate) / nxt
        estimate = nxt
        streak = streak + 1 if residual <= tol else 0
        if streak >= _STREAK:
            converged = True
            break
        x = y / nxt
    return float(estimate), iterations, float(residual), converged


def _perron_vector(g):
    g.degree_scaling()  # rejects zero-degree vertices before we divide
    return np.sqrt(g.degrees / g.volume)


def second_eigenvalue_magnitude(g, tol=1e-8, max_iter=100000, seed=Seed(0), w=None):
    """Estimate max(|lambda_2|, |lambda_n|) of the normalized adjacency.

    Power iteration runs on Q deflated against its top eigenvector, with
    every iterate re-orthogonalized to suppress drift.  If max_iter is hit
    before the change criterion fires, the best estimate (always a lower
    bound) is returned with converged=False.  Pass w to also record the
    degree-concentration statistic in the report.
    """
    if g.n == 0:
        raise EmptyGraphError("spectral estimate needs a nonempty graph")
    if not is_connected(g):
        raise DisconnectedGraphError("spectral estimate needs a connected graph")
    u1 = _perron_vector(g)
    estimate, iterations, residual, converged = _norm_power(
        lambda x: apply_Q(g, x),
        g.n,
        seed,
        tol,
        max_iter,
        project=lambda x: _deflate(x, u1),
    )
    concentration = None if w is None else degree_concentration_stat(g, w)
    return SpectralReport(
        lambda2_abs=estimate,
        gap=1.0 - estimate,
        iterations=iterations,
        residual=residual,
        degree_ratio=float(g.degrees.max() / g.degrees.min()),
        concentration_stat=concentration,
        converged=converged,
    )


def dense_spectrum_oracle(g):
    """All eigenvalues of the normalized adjacency, descending; n <= 512 only."""
    if g.n > DENSE_SPECTRUM_CUTOFF:
        raise DenseSizeError(f"dense spectrum capped at n={DENSE_SPECTRUM_CUTOFF}, got {g.n}")
    if g.n == 0:
        raise EmptyGraphError("dense spectrum needs a nonempty graph")
    _, inv_sqrt = g.degree_scaling()
    row = np.repeat(np.arange(g.n), g.degrees)
    col = g.indices.astype(np.int64)
    dense = np.zeros((g.n, g.n))
    dense[row, col] = inv_sqrt[row] * inv_sqrt[col]
    return np.linalg.eigvalsh(dense)[::-1]


def degree_concentration_stat(g, w):
    """max_i |d_i / w_i - 1|: how far realized degrees sit from expected ones."""
    w = _positive_weights(w, g.n)
    return float(np.max(np.abs(g.degrees / w - 1.0)))


def chung_lu_deviation_norm(g, w, tol=1e-8, max_iter=100000, seed=Seed(0)):
    """Spectral norm of the centered weight-normalized adjacency.

    The operator is x -> W^{-1/2} A W^{-1/2} x - chi (chi . x) with
    chi_i = sqrt(w_i / sum(w)): the realized graph minus its expectation
    under the weight model, both scaled by expected degrees.  An empty
    graph gives exactly 1, the norm of the rank-one expectation.
    """
    w = _positive_weights(w, g.n)
    inv_sqrt_w = 1.0 / np.sqrt(w)
    chi = np.sqrt(w / w.sum())

    def op(x):
        return inv_sqrt_w * _adjacency_matvec(g, inv_sqrt_w * x) - chi * (chi @ x)

    estimate, iterations, residual, converged = _norm_power(op, g.n, seed, tol, max_iter)
    if not converged:
        raise MaxIterationsError(
            f"deviation norm did not settle in {max_iter} iterations "
            f"(estimate {estimate}, residual {residual})",
            result=estimate,
        )
    return estimate


def sbm_deviation_norm(g, params, tol=1e-8, max_iter=100000, seed=Seed(0)):
    """Spectral norm of Q minus its block-model expectation.

    Q uses the realized degrees; the expectation uses the model's expected
    degrees and is block constant, so its action needs only two partial
    sums per apply.
    """
    if not isinstance(params, SbmParams):
        raise InvalidParameterError("expected SbmParams")
    if g.n != params.n:
        raise LengthMismatchError(f"graph has n={g.n}, params have n={params.n}")
    g.degree_scaling()
    n, m, p, q = params.n, params.m, params.p, params.q
    expected = np.full(n, (n - m) * p + m * q)
    expected[:m] = m * p + (n - m) * q
    inv_sqrt_exp = 1.0 / np.sqrt(expected)

    def op(x):
        realized = apply_Q(g, x)
        y = inv_sqrt_exp * x
        s1 = np.sum(y[:m])
        s2 = np.sum(y[m:])
        block = np.full(n, q * s1 + p * s2)
        block[:m] = p * s1 + q * s2
        return realized - inv_sqrt_exp * block

    estimate, iterations, residual, converged = _norm_power(op, n, seed, tol, max_iter)
    if not converged:
        raise MaxIterationsError(
            f"deviation norm did not settle in {max_iter} iterations "
            f"(estimate {estimate}, residual {residual})",
            result=estimate,
        )
    return estimate


def qtilde_localization_stat(g, v):
    """Sup norm of the deflated normalized adjacency applied to n D^{-1/2} v.

    Decay of this statistic in n is what licenses element-wise convergence
    claims; a preference concentrated on one vertex keeps it large.
    """
    v = as_probability_vector(v, g.n)
    _, inv_sqrt = g.degree_scaling()
    u1 = np.sqrt(g.degrees / g.volume)
    vprime = g.n * inv_sqrt * v
    image = apply_Q(g, vprime) - (u1 @ vprime) * u1
    return float(np.max(np.abs(image)))
