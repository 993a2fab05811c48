import numpy as np
import pytest
from helpers import connected_er, random_probability

from prlab import (
    DenseSizeError,
    EmptySetError,
    InvalidParameterError,
    MaxIterationsError,
    ProbabilityVectorError,
    VertexOutOfRangeError,
    ZeroDegreeError,
    apply_P,
    build_graph,
    stationary_distribution,
)
from prlab.pagerank import (
    PageRankConfig,
    PageRankResult,
    as_probability_vector,
    pagerank_dense_oracle,
    pagerank_power,
    preference_set,
    preference_uniform,
    preference_unit,
    read_vector,
    write_vector,
)

PATH3 = [(0, 1), (1, 2)]
K3 = [(0, 1), (0, 2), (1, 2)]


def test_alpha_zero_returns_preference():
    g = build_graph(3, PATH3)
    v = np.array([0.2, 0.5, 0.3])
    res = pagerank_power(g, v, PageRankConfig(alpha=0.0))
    assert res.iterations == 1
    np.testing.assert_allclose(res.vector, v, rtol=0, atol=1e-14)


def test_path_uniform_half_damping():
    # closed form: (5/18, 4/9, 5/18)
    g = build_graph(3, PATH3)
    res = pagerank_power(g, preference_uniform(3), PageRankConfig(alpha=0.5, tol=1e-14))
    np.testing.assert_allclose(res.vector, [5 / 18, 4 / 9, 5 / 18], atol=1e-13)
    oracle = pagerank_dense_oracle(g, preference_uniform(3), 0.5)
    np.testing.assert_allclose(oracle, [5 / 18, 4 / 9, 5 / 18], atol=1e-14)


def test_complete_graph_uniform_is_fixed():
    g = build_graph(3, K3)
    res = pagerank_power(g, preference_uniform(3), PageRankConfig(alpha=0.85))
    np.testing.assert_allclose(res.vector, 1 / 3, atol=1e-14)


def test_high_damping_approaches_stationary_on_regular_graph():
    k8 = build_graph(8, [(i, j) for i in range(8) for j in range(i + 1, 8)])
    res = pagerank_power(k8, preference_uniform(8), PageRankConfig(alpha=0.99))
    assert np.abs(res.vector - stationary_distribution(k8)).sum() < 1e-6


def test_power_matches_dense_oracle():
    rng = np.random.default_rng(42)
    for trial in range(50):
        n = int(rng.integers(8, 120))
        g = connected_er(1000 + trial, n)
        alpha = float(rng.uniform(0.0, 0.99))
        v = random_probability(rng, n)
        got = pagerank_power(g, v, PageRankConfig(alpha=alpha, tol=1e-13)).vector
        want = pagerank_dense_oracle(g, v, alpha)
        assert np.abs(got - want).sum() <= 1e-10


def test_fixed_point_property():
    rng = np.random.default_rng(43)
    for trial in range(10):
        n = 60
        g = connected_er(2000 + trial, n)
        alpha = float(rng.uniform(0.1, 0.95))
        v = random_probability(rng, n)
        pi = pagerank_power(g, v, PageRankConfig(alpha=alpha, tol=1e-13)).vector
        back = alpha * apply_P(g, pi) + (1 - alpha) * v
        assert np.abs(back - pi).sum() < 1e-10


def test_residual_decays_geometrically():
    g = connected_er(3000, 80)
    alpha = 0.8
    res = pagerank_power(g, preference_uniform(80), PageRankConfig(alpha=alpha, tol=1e-11))
    assert res.final_residual <= 2 * alpha ** (res.iterations - 1) + 1e-14


def test_mass_conserved_through_iteration():
    g = connected_er(3001, 70)
    v = preference_uniform(70)
    x = v.copy()
    for _ in range(50):
        x = 0.9 * apply_P(g, x) + 0.1 * v
    assert abs(x.sum() - 1.0) <= 1e-12


def test_result_sums_to_one():
    g = connected_er(3002, 90)
    rng = np.random.default_rng(7)
    res = pagerank_power(g, random_probability(rng, 90), PageRankConfig(alpha=0.9))
    assert abs(res.vector.sum() - 1.0) <= 1e-12


def test_oracle_linearity():
    g = connected_er(3003, 40)
    rng = np.random.default_rng(8)
    v1 = random_probability(rng, 40)
    v2 = random_probability(rng, 40)
    mixed = pagerank_dense_oracle(g, (v1 + v2) / 2, 0.7)
    separate = (pagerank_dense_oracle(g, v1, 0.7) + pagerank_dense_oracle(g, v2, 0.7)) / 2
    np.testing.assert_allclose(mixed, separate, atol=1e-13)


def test_max_iterations_carries_best_iterate():
    g = build_graph(3, PATH3)
    with pytest.raises(MaxIterationsError) as err:
        pagerank_power(g, preference_uniform(3), PageRankConfig(alpha=0.9, tol=1e-15, max_iter=3))
    result = err.value.result
    assert isinstance(result, PageRankResult)
    assert result.iterations == 3
    assert abs(result.vector.sum() - 1.0) <= 1e-12


def test_config_validation_and_defaults():
    assert PageRankConfig(alpha=0.85).max_iter == 1710
    assert PageRankConfig(alpha=0.0).max_iter == 100
    assert PageRankConfig(alpha=0.5, tol=1e-6).max_iter == 200
    with pytest.raises(InvalidParameterError):
        PageRankConfig(alpha=1.0)
    with pytest.raises(InvalidParameterError):
        PageRankConfig(alpha=-0.1)
    with pytest.raises(InvalidParameterError):
        PageRankConfig(alpha=0.5, tol=0.0)
    with pytest.raises(InvalidParameterError):
        PageRankConfig(alpha=0.5, max_iter=0)


def test_zero_degree_rejected():
    g = build_graph(3, [(0, 1)])
    with pytest.raises(ZeroDegreeError):
        pagerank_power(g, preference_uniform(3), PageRankConfig(alpha=0.5))
    with pytest.raises(ZeroDegreeError):
        pagerank_dense_oracle(g, preference_uniform(3), 0.5)


def test_dense_oracle_size_cap():
    n = 4097
    g = build_graph(n, [(i, i + 1) for i in range(n - 1)])
    with pytest.raises(DenseSizeError):
        pagerank_dense_oracle(g, preference_uniform(n), 0.5)


def test_preferences():
    np.testing.assert_array_equal(preference_unit(4, 2), [0, 0, 1, 0])
    assert preference_uniform(5).sum() == pytest.approx(1.0, abs=1e-15)
    np.testing.assert_array_equal(preference_set(4, [1, 3, 1]), [0, 0.5, 0, 0.5])
    with pytest.raises(VertexOutOfRangeError):
        preference_unit(4, 4)
    with pytest.raises(EmptySetError):
        preference_set(4, [])
    with pytest.raises(VertexOutOfRangeError):
        preference_set(4, [0, 9])


def test_probability_validator():
    as_probability_vector([0.5, 0.5])
    with pytest.raises(ProbabilityVectorError):
        as_probability_vector([0.6, 0.5])
    with pytest.raises(ProbabilityVectorError):
        as_probability_vector([-0.1, 1.1])
    with pytest.raises(ProbabilityVectorError):
        as_probability_vector([0.5, 0.5], n=3)


def test_vector_io_round_trip(tmp_path):
    rng = np.random.default_rng(9)
    x = random_probability(rng, 20)
    path = tmp_path / "v.txt"
    write_vector(x, path)
    back = read_vector(path)
    np.testing.assert_allclose(back, x, rtol=0, atol=1e-15)


def test_vector_io_renormalizes_small_defects(tmp_path):
    path = tmp_path / "v.txt"
    path.write_text("0.5\n0.5000000004\n")
    back = read_vector(path)
    assert back.sum() == pytest.approx(1.0, abs=1e-15)


def test_vector_io_rejects_large_defects(tmp_path):
    path = tmp_path / "v.txt"
    path.write_text("0.5\n0.6\n")
    with pytest.raises(ProbabilityVectorError):
        read_vector(path)
