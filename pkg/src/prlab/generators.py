"""Seeded random-graph families with expected-degree control.

Sampling contract: every family decides each unordered pair (i, j), i < j,
by one uniform draw, consumed row by row (row i draws n-1-i uniforms in
order). The RNG is PCG64 seeded through SeedSequence(base, spawn_key=
(stream,)), so a (base, stream) pair pins the graph byte for byte and
distinct streams never overlap.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InadmissibleWeightsError, InvalidParameterError
from .graph_core import Graph, _from_sorted_pairs

__all__ = [
    "Seed",
    "WeightVector",
    "SbmParams",
    "gen_er",
    "gen_chung_lu",
    "gen_sbm",
    "power_law_weights",
    "geometric_clipped_weights",
    "write_weights",
    "read_weights",
]


@dataclass(frozen=True)
class Seed:
    """Reproducibility handle: a base seed plus a stream index."""

    base: int
    stream: int = 0

    def __post_init__(self):
        if not (isinstance(self.base, int) and self.base >= 0):
            raise InvalidParameterError(f"seed base must be a nonnegative int, got {self.base!r}")
        if not (isinstance(self.stream, int) and self.stream >= 0):
            raise InvalidParameterError(f"seed stream must be a nonnegative int, got {self.stream!r}")

    def derive(self, stream):
        """Same base, different stream."""
        return Seed(self.base, stream)

    def rng(self):
        """Fresh generator for this (base, stream); repeat calls are identical."""
        ss = np.random.SeedSequence(self.base, spawn_key=(self.stream,))
        return np.random.Generator(np.random.PCG64(ss))


@dataclass(frozen=True)
class WeightVector:
    """Expected-degree vector with the admissibility guarantee max(w)^2 <= sum(w).

    Admissibility keeps every pair probability w_i w_j / sum(w) inside [0, 1].
    """

    w: np.ndarray
    provenance: str = "explicit"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        w = np.ascontiguousarray(self.w, dtype=np.float64)
        if w.ndim != 1 or w.size == 0:
            raise InadmissibleWeightsError("weights must be a nonempty 1-d vector")
        if not np.isfinite(w).all() or w.min() <= 0:
            raise InadmissibleWeightsError("weights must be finite and positive")
        if w.max() ** 2 > w.sum():
            raise InadmissibleWeightsError(
                f"max(w)^2 = {w.max()**2:.6g} exceeds sum(w) = {w.sum():.6g}"
            )
        w.flags.writeable = False
        object.__setattr__(self, "w", w)

    @property
    def n(self):
        return self.w.size

    @property
    def total(self):
        return float(self.w.sum())

    @property
    def mean(self):
        return float(self.w.mean())

    @property
    def ratio(self):
        return float(self.w.max() / self.w.min())


@dataclass(frozen=True)
class SbmParams:
    """Two-community stochastic block model: within-probability p, cross q.

    Community 1 is vertices 0..m-1 with m >= n/2 (m = n/2 allowed), so
    community 1 is never the smaller one. q = p degenerates to gen_er and
    q = 0 to two disjoint blocks, both valid.
    """

    n: int
    m: int
    p: float
    q: float

    def __post_init__(self):
        if self.n < 2:
            raise InvalidParameterError(f"need n >= 2, got {self.n}")
        if not 0.0 < self.p <= 1.0:
            raise InvalidParameterError(f"need 0 < p <= 1, got {self.p}")
        if not 0.0 <= self.q <= self.p:
            raise InvalidParameterError(f"need 0 <= q <= p, got q={self.q}, p={self.p}")
        if not self.n / 2 <= self.m < self.n:
            raise InvalidParameterError(f"need n/2 <= m < n, got m={self.m}, n={self.n}")

    @property
    def w_max(self):
        """Expected degree in the large community (diagonal convention included)."""
        return self.m * self.p + (self.n - self.m) * self.q

    @property
    def w_min(self):
        """Expected degree in the small community."""
        return (self.n - self.m) * self.p + self.m * self.q


def _sample_upper(rng, n, row_p):
    """Pairs (i, j), i < j, kept when uniform < row_p(i)[j - i - 1].

    row_p(i) may return a scalar. One uniform per pair, consumed in row
    order; this draw schedule is part of the determinism contract.
    """
    counts = np.zeros(n, np.int64)
    hit_lists = []
    for i in range(n - 1):
        u = rng.random(n - 1 - i)
        sel = np.nonzero(u < row_p(i))[0]
        if sel.size:
            counts[i] = sel.size
            hit_lists.append(sel + (i + 1))
    lo = np.repeat(np.arange(n, dtype=np.int64), counts)
    hi = np.concatenate(hit_lists) if hit_lists else np.empty(0, np.int64)
    return lo, hi


def gen_er(n, p, seed):
    """Erdos-Renyi G(n, p): every pair independently with probability p."""
    n = int(n)
    if n < 0:
        raise InvalidParameterError(f"need n >= 0, got {n}")
    if not 0.0 <= p <= 1.0:
        raise InvalidParameterError(f"need 0 <= p <= 1, got {p}")
    lo, hi = _sample_upper(seed.rng(), n, lambda i: p)
    return _from_sorted_pairs(n, lo, hi)


def gen_chung_lu(w, seed):
    """Expected-degree graph: pair (i, j) appears with probability w_i w_j / sum(w).

    Admissibility of w (enforced by WeightVector) keeps every probability
    at most 1, so no clipping happens.
    """
    if not isinstance(w, WeightVector):
        w = WeightVector(np.asarray(w, dtype=np.float64))
    wv = w.w
    inv_total = 1.0 / w.total
    lo, hi = _sample_upper(seed.rng(), w.n, lambda i: (wv[i] * inv_total) * wv[i + 1 :])
    return _from_sorted_pairs(w.n, lo, hi)


def gen_sbm(params, seed):
    """Two-community block model draw."""
    n, m, p, q = params.n, params.m, params.p, params.q

    def row_p(i):
        width = n - 1 - i
        if i >= m:
            return p  # both endpoints in community 2
        probs = np.full(width, q)
        probs[: m - 1 - i] = p  # j still inside community 1
        return probs

    lo, hi = _sample_upper(seed.rng(), n, row_p)
    return _from_sorted_pairs(n, lo, hi)


def power_law_weights(n, beta, d, m_cap):
    """Deterministic power-law expected degrees with exponent beta.

    w_k = c (i0 + k)^(-1/(beta-1)) for k = 1..n, with c fixed by the target
    average degree d and the head offset i0 chosen so the largest weight
    approaches the target maximum m_cap.
    """
    n = int(n)
    if n < 1:
        raise InvalidParameterError(f"need n >= 1, got {n}")
    if not beta > 2:
        raise InvalidParameterError(f"need beta > 2, got {beta}")
    if not (d > 0 and m_cap > 0):
        raise InvalidParameterError(f"need d > 0 and m_cap > 0, got d={d}, m_cap={m_cap}")
    exponent = 1.0 / (beta - 1.0)
    c = (beta - 2.0) / (beta - 1.0) * d * n**exponent
    i0 = n * (d * (beta - 2.0) / (m_cap * (beta - 1.0))) ** (beta - 1.0)
    k = np.arange(1, n + 1, dtype=np.float64)
    w = c * (i0 + k) ** (-exponent)
    return WeightVector(
        w, provenance="power_law", params={"beta": beta, "d": d, "m_cap": m_cap, "c": c, "i0": i0}
    )


def geometric_clipped_weights(n, mean, ratio, seed):
    """Geometric weights with the given target mean, clipped into [L, ratio*L].

    The floor is L = mean/3; with ratio 7 this keeps the post-clip mean
    within about 5 percent of the target while bounding the spread.
    """
    n = int(n)
    if n < 1:
        raise InvalidParameterError(f"need n >= 1, got {n}")
    if not mean > 1:
        raise InvalidParameterError(f"need mean > 1, got {mean}")
    if not ratio > 1:
        raise InvalidParameterError(f"need ratio > 1, got {ratio}")
    draws = seed.rng().geometric(1.0 / mean, size=n).astype(np.float64)
    floor = mean / 3.0
    w = np.clip(draws, floor, ratio * floor)
    return WeightVector(w, provenance="geometric_clipped", params={"mean": mean, "ratio": ratio})


def write_weights(wv, path):
    """One weight per line, shortest round-trip decimals."""
    with open(path, "w") as fh:
        fh.write(f"# provenance {wv.provenance}\n")
        for value in wv.w.tolist():
            fh.write(f"{value!r}\n")


def read_weights(path):
    """Parse a one-value-per-line weight file; admissibility is re-checked."""
    values = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            values.append(float(line))
    return WeightVector(np.array(values), provenance="imported", params={"path": str(path)})
