"""Graph statistics: triad counts, transitivity, density, distances,
externality indices, and the estimated-probability contrast statistic."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .graph import Graph

__all__ = [
    "STATISTIC_NAMES",
    "StatisticValue",
    "DistanceSummary",
    "triangle_count",
    "two_star_count",
    "transitivity_index",
    "transitivity_degenerate",
    "density",
    "distances",
    "s_tilde",
    "s_tilde_matrix",
    "optimal_stat",
    "evaluate_statistic",
]

EXTERNALITY_KINDS = ("popularity", "transitivity")


def _adj(g: Graph) -> np.ndarray:
    return g.adjacency.astype(np.float64)


def triangle_count(g: Graph) -> int:
    """Number of triads with all three edges present."""
    a = _adj(g)
    return int(round(np.trace(a @ a @ a) / 6.0))


def two_star_count(g: Graph) -> int:
    """Number of triads with exactly two edges present."""
    a = _adj(g)
    common = a @ a
    iu = np.triu_indices(g.n, k=1)
    return int(round(float(np.sum(common[iu] * (1.0 - a[iu])))))


def transitivity_index(g: Graph) -> float:
    """3T / (3T + S) over triangles T and two-stars S; 0 when no triad has
    two or more edges (see transitivity_degenerate)."""
    t = triangle_count(g)
    s = two_star_count(g)
    if 3 * t + s == 0:
        return 0.0
    return 3.0 * t / (3.0 * t + s)


def transitivity_degenerate(g: Graph) -> bool:
    """True when the transitivity denominator is zero."""
    return 3 * triangle_count(g) + two_star_count(g) == 0


def density(g: Graph) -> float:
    if g.n < 2:
        raise ValueError("density needs at least two nodes")
    return g.edge_count / (g.n * (g.n - 1) / 2.0)


@dataclass(frozen=True)
class DistanceSummary:
    diameter: float  # max shortest-path length over connected pairs; inf if none
    mean_distance: float  # mean over connected ordered pairs; 0 if none
    unreachable_pairs: int  # ordered pairs with no path


def distances(g: Graph) -> DistanceSummary:
    """BFS shortest paths from every node, summarized over connected ordered
    pairs; unreachable pairs are counted, not folded into the mean."""
    n = g.n
    if n < 2:
        return DistanceSummary(math.inf, 0.0, 0)
    sp = shortest_path(csr_matrix(g.adjacency), method="D", unweighted=True, directed=False)
    off = ~np.eye(n, dtype=bool)
    finite = np.isfinite(sp) & off
    unreachable = int(off.sum() - finite.sum())
    if not finite.any():
        return DistanceSummary(math.inf, 0.0, unreachable)
    dmax = sp[finite].max()
    return DistanceSummary(float(int(dmax)), float(sp[finite].mean()), unreachable)


def s_tilde(g: Graph, kind: str, i: int, j: int) -> float:
    """Dyad externality index on the graph as given.

    popularity: degree of i plus degree of j. transitivity: twice the number
    of common neighbors of i and j.
    """
    if i == j:
        raise ValueError("i and j must differ")
    if kind == "popularity":
        return float(g.degrees[i] + g.degrees[j])
    if kind == "transitivity":
        a = g.adjacency
        return 2.0 * float(np.sum(a[i] & a[j]))
    raise ValueError(f"kind must be one of {EXTERNALITY_KINDS}, got {kind!r}")


def s_tilde_matrix(g: Graph, kind: str) -> np.ndarray:
    """All dyad externality indices at once; diagonal is zeroed."""
    a = _adj(g)
    if kind == "popularity":
        deg = a.sum(axis=1)
        out = deg[:, None] + deg[None, :]
    elif kind == "transitivity":
        out = 2.0 * (a @ a)
    else:
        raise ValueError(f"kind must be one of {EXTERNALITY_KINDS}, got {kind!r}")
    np.fill_diagonal(out, 0.0)
    return out


def optimal_stat(g: Graph, p_hat: np.ndarray, kind: str) -> float:
    """Sum over dyads of (D_ij - p_hat_ij) times the externality index.

    p_hat must be a symmetric matrix of probabilities matching the graph
    size. Accumulated with exact float summation to keep the two algebraic
    forms of the transitivity version in tight agreement.
    """
    p = np.asarray(p_hat, dtype=np.float64)
    if p.shape != (g.n, g.n):
        raise ValueError(f"p_hat shape {p.shape} does not match n={g.n}")
    if not np.allclose(p, p.T, atol=1e-12):
        raise ValueError("p_hat must be symmetric")
    if p.size and (np.nanmin(p) < 0.0 or np.nanmax(p) > 1.0):
        raise ValueError("p_hat entries must lie in [0, 1]")
    a = _adj(g)
    st = s_tilde_matrix(g, kind)
    iu = np.triu_indices(g.n, k=1)
    terms = (a[iu] - p[iu]) * st[iu]
    return math.fsum(terms.tolist())


@dataclass(frozen=True)
class StatisticValue:
    value: float
    degenerate: bool = False


def _eval_diameter(g: Graph) -> StatisticValue:
    d = distances(g)
    if math.isinf(d.diameter):
        return StatisticValue(0.0, degenerate=True)
    return StatisticValue(float(d.diameter))


def _eval_mean_distance(g: Graph) -> StatisticValue:
    d = distances(g)
    if math.isinf(d.diameter):
        return StatisticValue(0.0, degenerate=True)
    return StatisticValue(d.mean_distance)


def _eval_transitivity(g: Graph) -> StatisticValue:
    return StatisticValue(transitivity_index(g), degenerate=transitivity_degenerate(g))


STATISTIC_NAMES = (
    "triangle_count",
    "two_star_count",
    "transitivity_index",
    "density",
    "diameter",
    "mean_distance",
    "optimal_transitivity",
    "optimal_popularity",
)

_NEEDS_P_HAT = ("optimal_transitivity", "optimal_popularity")


def statistic_needs_p_hat(name: str) -> bool:
    return name in _NEEDS_P_HAT


def evaluate_statistic(name: str, g: Graph, p_hat: np.ndarray | None = None) -> StatisticValue:
    """Evaluate a named statistic; total on every graph (degenerate cases
    return 0.0 with the flag set)."""
    if name == "triangle_count":
        return StatisticValue(float(triangle_count(g)))
    if name == "two_star_count":
        return StatisticValue(float(two_star_count(g)))
    if name == "transitivity_index":
        return _eval_transitivity(g)
    if name == "density":
        return StatisticValue(density(g))
    if name == "diameter":
        return _eval_diameter(g)
    if name == "mean_distance":
        return _eval_mean_distance(g)
    if name in _NEEDS_P_HAT:
        if p_hat is None:
            raise ValueError(f"statistic {name!r} requires the fitted link probabilities")
        kind = name.removeprefix("optimal_")
        return StatisticValue(optimal_stat(g, p_hat, kind))
    raise ValueError(f"unknown statistic {name!r}; valid names: {', '.join(STATISTIC_NAMES)}")
