"""Closed-form approximations to personalized PageRank at large scale.

On a well-connected graph the PageRank vector is close to a mixture of the
stationary distribution and the preference vector.  For stochastic block
models the expectation of the walk operator has rank two, so the limit can
be written down exactly; with two equal communities it collapses to a one
line formula.
"""

import numpy as np

from .errors import EmptyGraphError, InvalidParameterError
from .generators import SbmParams
from .pagerank import as_probability_vector


def _check_alpha(alpha):
    alpha = float(alpha)
    if not 0.0 <= alpha < 1.0:
        raise InvalidParameterError(f"alpha must lie in [0, 1), got {alpha}")
    return alpha


def asymptotic_mixture(g, v, alpha):
    """Mixture approximation alpha * d / vol + (1 - alpha) * v.

    This is the limit object the exact vector concentrates around; it uses
    only degrees, never the walk itself.  Unlike the solvers, the closed
    interval is allowed: alpha = 1 is exactly the stationary endpoint.
    """
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise InvalidParameterError(f"alpha must lie in [0, 1], got {alpha}")
    v = as_probability_vector(v, g.n)
    vol = g.volume
    if vol == 0:
        raise EmptyGraphError("mixture needs at least one edge")
    return alpha * (g.degrees / vol) + (1.0 - alpha) * v


class SbmAverageOperator:
    """Expectation of the walk operator for a stochastic block model.

    Within-community entries are p / t and cross entries are q / t where t
    is the expected degree of the source community (self terms included, as
    in the degree normalizers below).  The operator is block constant, so
    applying it only needs the two community mass totals.
    """

    def __init__(self, params):
        if not isinstance(params, SbmParams):
            raise InvalidParameterError("expected SbmParams")
        self.params = params
        n, m, p, q = params.n, params.m, params.p, params.q
        # t1: expected degree in the community of size m; t2: the other
        self.t1 = m * p + (n - m) * q
        self.t2 = (n - m) * p + m * q

    @property
    def expected_degrees(self):
        params = self.params
        out = np.full(params.n, self.t2)
        out[: params.m] = self.t1
        return out

    def block_matrix(self):
        """2x2 action on (community 1 mass, community 2 mass); columns sum to 1."""
        params = self.params
        n, m, p, q = params.n, params.m, params.p, params.q
        return np.array(
            [
                [m * p / self.t1, m * q / self.t2],
                [(n - m) * q / self.t1, (n - m) * p / self.t2],
            ]
        )

    def block_sums(self, x):
        m = self.params.m
        return np.array([np.sum(x[:m]), np.sum(x[m:])])

    def apply(self, x):
        params = self.params
        n, m, p, q = params.n, params.m, params.p, params.q
        s1, s2 = self.block_sums(np.asarray(x, dtype=np.float64))
        top = p * s1 / self.t1 + q * s2 / self.t2
        bottom = q * s1 / self.t1 + p * s2 / self.t2
        out = np.full(n, bottom)
        out[:m] = top
        return out


def sbm_asymptotic(params, v, alpha, tol=1e-13, max_iter=100000):
    """Solve pi = alpha * Pbar @ pi + (1 - alpha) * v for the averaged operator.

    Because Pbar is block constant the fixed point is found on the two
    community mass totals and then expanded back to a full vector.
    """
    alpha = _check_alpha(alpha)
    op = SbmAverageOperator(params)
    v = as_probability_vector(v, params.n)
    M = op.block_matrix()
    s = op.block_sums(v)
    target = (1.0 - alpha) * s
    for _ in range(max_iter):
        nxt = alpha * (M @ s) + target
        if np.abs(nxt - s).sum() <= tol:
            s = nxt
            break
        s = nxt
    n, m, p, q = params.n, params.m, params.p, params.q
    top = p * s[0] / op.t1 + q * s[1] / op.t2
    bottom = q * s[0] / op.t1 + p * s[1] / op.t2
    per_vertex = np.full(n, bottom)
    per_vertex[:m] = top
    return alpha * per_vertex + (1.0 - alpha) * v


def sbm_equal_closed_form(params, v, alpha):
    """Exact limit for two equal communities.

    With contrast b = (p - q) / (p + q) and the split indicator u (entries
    +-1 / sqrt(n)), the limit is

        alpha / n * ones + (1 - alpha) * (v + (alpha b / (1 - alpha b)) (v . u) u)
    """
    alpha = _check_alpha(alpha)
    if not isinstance(params, SbmParams):
        raise InvalidParameterError("expected SbmParams")
    n, m = params.n, params.m
    if 2 * m != n:
        raise InvalidParameterError(
            f"closed form needs two equal communities, got n={n} m={m}"
        )
    v = as_probability_vector(v, n)
    contrast = (params.p - params.q) / (params.p + params.q)
    u = np.full(n, -1.0 / np.sqrt(n))
    u[:m] = 1.0 / np.sqrt(n)
    shrink = alpha * contrast / (1.0 - alpha * contrast)
    correction = v + shrink * (v @ u) * u
    return alpha / n * np.ones(n) + (1.0 - alpha) * correction
