import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netnull.beta_model import fit_mle, link_probability_matrix
from netnull.graph import Graph
from netnull.stats import (
    STATISTIC_NAMES,
    density,
    distances,
    evaluate_statistic,
    optimal_stat,
    s_tilde,
    s_tilde_matrix,
    transitivity_index,
    triangle_count,
    two_star_count,
)


def random_graph(rng, n, p):
    upper = np.triu(rng.random((n, n)) < p, k=1)
    return Graph.from_edges(n, [(int(i), int(j)) for i, j in zip(*np.nonzero(upper))])


def brute_triads(g):
    """Count triangles and two-stars by direct triple enumeration."""
    a = g.adjacency
    n = g.n
    tri = 0
    stars = 0
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                m = int(a[i, j]) + int(a[i, k]) + int(a[j, k])
                if m == 3:
                    tri += 1
                elif m == 2:
                    stars += 1
    return tri, stars


def test_triangle_and_two_star_examples():
    triangle = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    path = Graph.from_edges(3, [(0, 1), (1, 2)])
    assert triangle_count(triangle) == 1
    assert two_star_count(triangle) == 0
    assert triangle_count(path) == 0
    assert two_star_count(path) == 1
    star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert triangle_count(star) == 0
    assert two_star_count(star) == 3


def test_triads_match_brute_force():
    rng = np.random.default_rng(0)
    for _ in range(25):
        g = random_graph(rng, int(rng.integers(3, 12)), rng.uniform(0.1, 0.9))
        tri, stars = brute_triads(g)
        assert triangle_count(g) == tri
        assert two_star_count(g) == stars


def test_transitivity_examples():
    triangle = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    path = Graph.from_edges(3, [(0, 1), (1, 2)])
    assert transitivity_index(triangle) == 1.0
    assert transitivity_index(path) == 0.0
    empty = Graph.empty(4)
    assert transitivity_index(empty) == 0.0
    assert evaluate_statistic("transitivity_index", empty).degenerate
    assert not evaluate_statistic("transitivity_index", path).degenerate


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=2, max_value=9), st.integers(min_value=0, max_value=2**30))
def test_triad_identity(n, seed):
    # 3*T + S equals the number of paths of length two, sum of C(d_i, 2)
    rng = np.random.default_rng(seed)
    g = random_graph(rng, n, rng.uniform(0, 1))
    lhs = 3 * triangle_count(g) + two_star_count(g)
    rhs = sum(int(d) * (int(d) - 1) // 2 for d in g.degrees)
    assert lhs == rhs


def test_density():
    assert density(Graph.complete(5)) == 1.0
    assert density(Graph.empty(5)) == 0.0
    assert density(Graph.from_edges(3, [(0, 1)])) == pytest.approx(1 / 3)
    with pytest.raises(ValueError):
        density(Graph.empty(1))


def test_distances_on_path():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    d = distances(g)
    assert d.diameter == 3
    # ordered pairs: distances 1,1,1 (x2), 2,2 (x2), 3 (x2) -> mean 20/12
    assert d.mean_distance == pytest.approx(20 / 12)
    assert d.unreachable_pairs == 0


def test_distances_disconnected():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (3, 4)])
    d = distances(g)
    assert d.diameter == 2
    assert d.mean_distance == pytest.approx(1.25)
    assert d.unreachable_pairs == 12


def test_distances_no_edges():
    d = distances(Graph.empty(3))
    assert math.isinf(d.diameter)
    assert d.unreachable_pairs == 6
    val = evaluate_statistic("diameter", Graph.empty(3))
    assert val.value == 0.0 and val.degenerate


def test_s_tilde_popularity_counts_own_edge():
    # path 0-1-2: degrees (1,2,1); the raw dyad index for (0,1) is 3
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    assert s_tilde(g, "popularity", 0, 1) == 3.0
    assert s_tilde(g, "popularity", 0, 2) == 2.0


def test_s_tilde_transitivity_is_common_neighbors_doubled():
    g = Graph.from_edges(4, [(0, 2), (1, 2), (0, 3), (1, 3)])
    assert s_tilde(g, "transitivity", 0, 1) == 4.0
    assert s_tilde(g, "transitivity", 2, 3) == 4.0
    assert s_tilde(g, "transitivity", 0, 2) == 0.0
    with pytest.raises(ValueError):
        s_tilde(g, "transitivity", 1, 1)
    with pytest.raises(ValueError):
        s_tilde(g, "support", 0, 1)


def test_s_tilde_matrix_matches_pairwise():
    rng = np.random.default_rng(3)
    g = random_graph(rng, 7, 0.5)
    for kind in ("popularity", "transitivity"):
        m = s_tilde_matrix(g, kind)
        for i in range(7):
            for j in range(7):
                if i != j:
                    assert m[i, j] == s_tilde(g, kind, i, j)
        assert np.all(m.diagonal() == 0.0)


def brute_optimal_transitivity(g, p_hat):
    """Verbatim triad-sum form: sum over dyads of the contrast times twice
    the common-neighbor count, written as an explicit triple loop."""
    a = g.adjacency
    n = g.n
    total = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            s = 0.0
            for k in range(n):
                if k != i and k != j and a[i, k] and a[j, k]:
                    s += 2.0
            total += (float(a[i, j]) - p_hat[i, j]) * s
    return total


def test_optimal_transitivity_matches_triple_loop():
    rng = np.random.default_rng(11)
    for _ in range(10):
        g = random_graph(rng, int(rng.integers(4, 12)), rng.uniform(0.2, 0.8))
        p_hat = link_probability_matrix(rng.normal(0, 0.5, g.n))
        assert optimal_stat(g, p_hat, "transitivity") == pytest.approx(
            brute_optimal_transitivity(g, p_hat), abs=1e-10
        )


def test_optimal_popularity_closed_form():
    # with s = d_i + d_j the dyad sum telescopes to sum_i d_i^2 minus the
    # p-weighted version
    rng = np.random.default_rng(13)
    g = random_graph(rng, 9, 0.4)
    p_hat = link_probability_matrix(rng.normal(0, 0.5, 9))
    deg = g.degrees.astype(float)
    direct = float(np.sum(deg**2)) - float(
        np.sum(np.triu(p_hat, 1) * (deg[:, None] + deg[None, :]))
    )
    assert optimal_stat(g, p_hat, "popularity") == pytest.approx(direct, abs=1e-9)


def test_optimal_stat_er_constant_p():
    # with constant p the transitivity form reduces to 6T - p * (6T + 2S)
    rng = np.random.default_rng(17)
    g = random_graph(rng, 12, 0.5)
    p = 0.37
    p_hat = np.full((12, 12), p)
    np.fill_diagonal(p_hat, 0.0)
    t, s = triangle_count(g), two_star_count(g)
    expected = 6.0 * t - p * (6.0 * t + 2.0 * s)
    assert optimal_stat(g, p_hat, "transitivity") == pytest.approx(expected, abs=1e-9)


def test_optimal_stat_validation():
    g = Graph.from_edges(3, [(0, 1)])
    with pytest.raises(ValueError):
        optimal_stat(g, np.zeros((2, 2)), "transitivity")
    bad = np.zeros((3, 3))
    bad[0, 1] = 0.5
    with pytest.raises(ValueError):
        optimal_stat(g, bad, "transitivity")
    neg = np.full((3, 3), -0.1)
    with pytest.raises(ValueError):
        optimal_stat(g, neg, "transitivity")


def test_evaluate_statistic_dispatch():
    g = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    assert evaluate_statistic("triangle_count", g).value == 1.0
    assert evaluate_statistic("density", g).value == 1.0
    assert evaluate_statistic("diameter", g).value == 1.0
    with pytest.raises(ValueError, match="unknown statistic"):
        evaluate_statistic("support", g)
    with pytest.raises(ValueError, match="link probabilities"):
        evaluate_statistic("optimal_transitivity", g)
    res = fit_mle(g.degrees)
    p_hat = link_probability_matrix(res.a)
    out = evaluate_statistic("optimal_transitivity", g, p_hat=p_hat)
    assert math.isfinite(out.value)
    assert set(STATISTIC_NAMES) >= {
        "triangle_count",
        "two_star_count",
        "transitivity_index",
        "density",
        "diameter",
        "mean_distance",
        "optimal_transitivity",
        "optimal_popularity",
    }
