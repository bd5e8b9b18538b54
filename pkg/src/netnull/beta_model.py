"""Degree-heterogeneity link model and its maximum-likelihood fit.

Each node carries a scalar a_i; a link forms independently with probability
expit(a_i + a_j). The MLE given an observed degree sequence solves the
moment equations d_i = sum_{j != i} expit(a_i + a_j) by a damped fixed-point
iteration in log space.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import expit, logit
from sklearn.base import BaseEstimator

from .graph import Graph, degree_sequence

__all__ = [
    "MleConvergenceError",
    "link_prob",
    "link_probability_matrix",
    "expected_degrees",
    "fit_mle",
    "MleResult",
    "BetaModelMLE",
]


class MleConvergenceError(RuntimeError):
    """Fixed-point iteration failed to reach the requested tolerance."""

    def __init__(self, message: str, residual: float, iterations: int):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


def link_prob(a_i: float, a_j: float) -> float:
    """expit(a_i + a_j), with -inf parameters pinning the probability to 0."""
    if np.isnan(a_i) or np.isnan(a_j):
        raise ValueError("heterogeneity parameters must not be NaN")
    if np.isneginf(a_i) or np.isneginf(a_j):
        return 0.0
    return float(expit(a_i + a_j))


def link_probability_matrix(a: np.ndarray) -> np.ndarray:
    """Matrix of pairwise link probabilities; diagonal zeroed."""
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 1:
        raise ValueError("expected a 1-d parameter vector")
    if np.isnan(a).any():
        raise ValueError("heterogeneity parameters must not be NaN")
    with np.errstate(invalid="ignore"):
        p = expit(a[:, None] + a[None, :])
    p = np.where(np.isneginf(a)[:, None] | np.isneginf(a)[None, :], 0.0, p)
    np.fill_diagonal(p, 0.0)
    return p


def expected_degrees(a: np.ndarray) -> np.ndarray:
    return link_probability_matrix(a).sum(axis=1)


@dataclass(frozen=True)
class MleResult:
    a: np.ndarray
    residual: float  # max abs difference between fitted expected degrees and targets
    iterations: int


def fit_mle(
    degrees,
    tol: float = 1e-10,
    max_iter: int = 5000,
) -> MleResult:
    """Fit a to the degree sequence by the fixed-point update

        a_i <- log d_i - log sum_{j != i} exp(a_j) / (1 + exp(a_i + a_j))

    with half-step damping whenever the degree residual increases. Nodes
    with d_i = 0 are pinned at -inf. Raises MleConvergenceError if the max
    degree residual does not drop below tol within max_iter sweeps.
    """
    d = np.asarray(list(degrees), dtype=np.float64)
    if d.ndim != 1:
        raise ValueError("expected a 1-d degree sequence")
    n = d.shape[0]
    if n == 0:
        return MleResult(np.empty(0), 0.0, 0)
    if (d < 0).any():
        raise ValueError("degrees must be nonnegative")
    if (d > n - 1).any():
        raise ValueError("degree exceeds n - 1; no simple graph fits")

    zero = d == 0
    if zero.all():
        return MleResult(np.full(n, -np.inf), 0.0, 0)

    act = ~zero
    da = d[act]
    if int(act.sum()) == 1:
        raise MleConvergenceError(
            "a single node with positive degree has no feasible partners",
            residual=float(da[0]),
            iterations=0,
        )
    a = np.clip(logit(da / (n - 1)), -30.0, 30.0)

    def resid(vec: np.ndarray) -> float:
        with np.errstate(over="ignore"):
            p = expit(vec[:, None] + vec[None, :])
        np.fill_diagonal(p, 0.0)
        return float(np.max(np.abs(p.sum(axis=1) - da)))

    log_d = np.log(da)
    prev = resid(a)
    it = 0
    while prev > tol and it < max_iter:
        # exp(a_j) / (1 + exp(a_i + a_j)) = exp(a_j - log1pexp(a_i + a_j))
        s = np.logaddexp(0.0, a[:, None] + a[None, :])
        r = np.exp(a[None, :] - s)
        np.fill_diagonal(r, 0.0)
        proposal = log_d - np.log(r.sum(axis=1))
        new = resid(proposal)
        if new > prev:
            proposal = 0.5 * (a + proposal)
            new = resid(proposal)
        a = proposal
        prev = new
        it += 1
    if prev > tol:
        raise MleConvergenceError(
            f"MLE did not converge: residual {prev:.3e} after {it} iterations",
            residual=prev,
            iterations=it,
        )

    full = np.full(n, -np.inf)
    full[act] = a
    return MleResult(full, prev, it)


class BetaModelMLE(BaseEstimator):
    """Estimator wrapper around fit_mle.

    Attributes after fit: heterogeneity_, expected_degrees_,
    link_probabilities_, n_iter_, residual_.
    """

    def __init__(self, tol: float = 1e-10, max_iter: int = 5000):
        self.tol = tol
        self.max_iter = max_iter

    def fit(self, X, y=None):
        """X is a Graph or a degree sequence."""
        degrees = degree_sequence(X).degrees if isinstance(X, Graph) else tuple(X)
        result = fit_mle(degrees, tol=self.tol, max_iter=self.max_iter)
        self.heterogeneity_ = result.a
        self.link_probabilities_ = link_probability_matrix(result.a)
        self.expected_degrees_ = self.link_probabilities_.sum(axis=1)
        self.n_iter_ = result.iterations
        self.residual_ = result.residual
        return self
