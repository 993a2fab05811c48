"""Shared test utilities."""

import math

import numpy as np

from prlab.generators import (
    SbmParams,
    Seed,
    gen_chung_lu,
    gen_er,
    gen_sbm,
    geometric_clipped_weights,
)
from prlab.graph_core import build_graph, is_connected


def retry_connected(make, tries=64):
    """First stream index whose draw is connected with all degrees positive."""
    for stream in range(tries):
        g = make(stream)
        if g.min_degree > 0 and is_connected(g):
            return g
    raise RuntimeError("no connected draw within the stream budget")


def connected_er(base, n, p=None):
    """An Erdos-Renyi draw that is connected with all degrees positive."""
    if p is None:
        p = min(1.0, (math.log(n) + 4.0) / n)
    return retry_connected(lambda stream: gen_er(n, p, Seed(base, stream)))


def random_probability(rng, n):
    """Strictly positive random distribution summing to 1 within 1e-12."""
    x = rng.random(n) + 1e-3
    return x / x.sum()


def path_graph(n):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(n):
    return build_graph(n, [(0, i) for i in range(1, n)])


def complete_graph(n):
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def spectral_corpus():
    """Named graphs with n <= 512 spanning the structured and random families."""
    graphs = [
        ("path_3", path_graph(3)),
        ("path_4", path_graph(4)),
        ("path_9", path_graph(9)),
        ("path_33", path_graph(33)),
        ("path_65", path_graph(65)),
        ("path_512", path_graph(512)),
        ("cycle_33", cycle_graph(33)),
        ("cycle_4", cycle_graph(4)),
        ("cycle_5", cycle_graph(5)),
        ("cycle_12", cycle_graph(12)),
        ("cycle_64", cycle_graph(64)),
        ("cycle_512", cycle_graph(512)),
        ("star_4", star_graph(4)),
        ("star_10", star_graph(10)),
        ("star_100", star_graph(100)),
        ("complete_3", complete_graph(3)),
        ("complete_4", complete_graph(4)),
        ("complete_9", complete_graph(9)),
        ("complete_17", complete_graph(17)),
    ]
    for base, n in ((70, 24), (71, 64), (72, 128), (73, 200), (74, 256), (75, 300)):
        graphs.append((f"er_{n}", connected_er(base, n)))
    for base, n, mean in ((80, 96, 14.0), (81, 192, 24.0), (82, 256, 30.0)):
        def make(stream, n=n, mean=mean, base=base):
            w = geometric_clipped_weights(n, mean, 7.0, Seed(base, 2 * stream))
            return gen_chung_lu(w, Seed(base, 2 * stream + 1))
        graphs.append((f"chung_lu_{n}", retry_connected(make)))
    for base, n, p, q in ((90, 64, 0.4, 0.1), (91, 128, 0.3, 0.05), (92, 256, 0.2, 0.02)):
        params = SbmParams(n=n, p=p, q=q, m=n // 2)
        graphs.append(
            (f"sbm_{n}", retry_connected(lambda stream: gen_sbm(params, Seed(base, stream))))
        )
    return graphs
