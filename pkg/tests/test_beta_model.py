import math

import numpy as np
import pytest
from scipy.special import expit

from netnull.beta_model import (
    BetaModelMLE,
    MleConvergenceError,
    expected_degrees,
    fit_mle,
    link_prob,
    link_probability_matrix,
)
from netnull.graph import Graph


def test_link_prob_basics():
    assert link_prob(0.0, 0.0) == 0.5
    assert link_prob(-math.inf, 3.0) == 0.0
    assert link_prob(5.0, -math.inf) == 0.0
    assert link_prob(2.0, 1.0) == pytest.approx(float(expit(3.0)), abs=0)
    with pytest.raises(ValueError):
        link_prob(math.nan, 0.0)


def test_link_probability_matrix_shape_and_diagonal():
    p = link_probability_matrix(np.array([0.0, 1.0, -np.inf]))
    assert p.shape == (3, 3)
    assert p.diagonal().tolist() == [0.0, 0.0, 0.0]
    assert p[0, 2] == 0.0 and p[2, 1] == 0.0
    assert p[0, 1] == pytest.approx(float(expit(1.0)))
    assert np.array_equal(p, p.T)


def test_regular_graph_closed_form():
    # k-regular solution is a_i = logit(k/(n-1))/2 for every node
    edges = [(i, (i + 1) % 8) for i in range(8)]
    g = Graph.from_edges(8, edges)
    res = fit_mle(g.degrees, tol=1e-14)
    target = 0.5 * math.log((2 / 7) / (1 - 2 / 7))
    assert np.abs(res.a - target).max() < 1e-12
    assert np.abs(expected_degrees(res.a) - 2).max() < 1e-12


def test_moment_condition_on_random_graphs():
    rng = np.random.default_rng(7)
    for _ in range(10):
        n = int(rng.integers(8, 60))
        a_true = rng.normal(-0.3, 0.7, n)
        p = link_probability_matrix(a_true)
        upper = np.triu(rng.random((n, n)) < p, k=1)
        g = Graph.from_edges(n, [(int(i), int(j)) for i, j in zip(*np.nonzero(upper))])
        if (g.degrees == 0).any() or (g.degrees == n - 1).any():
            continue
        res = fit_mle(g.degrees, tol=1e-12)
        assert np.abs(expected_degrees(res.a) - g.degrees).max() < 1e-10


def test_zero_degree_pinned_to_neg_inf():
    res = fit_mle((2, 2, 2, 1, 1, 0))
    assert res.a[5] == -math.inf
    assert expected_degrees(res.a)[5] == 0.0
    assert np.abs(expected_degrees(res.a) - np.array([2, 2, 2, 1, 1, 0])).max() < 1e-10


def test_saturated_star_has_no_finite_mle():
    # hub degree n-1 forces its link probabilities to 1, which no finite
    # heterogeneity vector attains
    with pytest.raises(MleConvergenceError):
        fit_mle((2, 1, 1))


def test_all_zero_sequence():
    res = fit_mle((0, 0, 0))
    assert np.all(np.isneginf(res.a))
    assert res.iterations == 0


def test_single_positive_degree_fails():
    with pytest.raises(MleConvergenceError) as exc:
        fit_mle((2, 0, 0))
    assert exc.value.residual > 0


def test_complete_graph_saturates():
    res = fit_mle((3, 3, 3, 3))
    assert np.abs(expected_degrees(res.a) - 3).max() < 1e-10
    # saturated fit pushes every parameter to the same large value
    assert np.all(res.a > 10)


def test_degree_above_n_minus_one_rejected():
    with pytest.raises(ValueError):
        fit_mle((4, 1, 1, 1))


def test_estimator_wrapper():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    est = BetaModelMLE(tol=1e-12).fit(g)
    assert est.get_params() == {"tol": 1e-12, "max_iter": 5000}
    assert np.abs(est.expected_degrees_ - g.degrees).max() < 1e-10
    assert est.link_probabilities_.shape == (4, 4)
    assert est.n_iter_ >= 0
    # degree sequences work as inputs too
    est2 = BetaModelMLE(tol=1e-12).fit((1, 1, 2, 2, 2))
    assert np.abs(np.sort(est2.expected_degrees_) - np.array([1, 1, 2, 2, 2])).max() < 1e-10
