"""Transferable-utility link-formation game with externalities.

A dyad forms when the joint surplus a_i + a_j + gamma * s_ij(g) - u_ij is
nonnegative. For gamma >= 0 the best-response map over graphs is monotone,
so iterating from the empty or complete graph reaches the least or greatest
pairwise-stable network.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph
from .stats import transitivity_index, triangle_count

__all__ = [
    "EXTERNALITY_KINDS",
    "MODES",
    "GameConfig",
    "draw_shocks",
    "two_point_heterogeneity",
    "externality_matrix",
    "marginal_utility",
    "phi_map",
    "find_pairwise_stable",
    "is_pairwise_stable",
    "sweep",
    "SWEEP_COLUMNS",
]

EXTERNALITY_KINDS = ("popularity", "transitivity")
MODES = ("least", "greatest")

SWEEP_COLUMNS = (
    "gamma",
    "replication",
    "mode",
    "edge_count",
    "triangle_count",
    "transitivity_index",
)


def draw_shocks(n: int, rng: np.random.Generator) -> np.ndarray:
    """Symmetric matrix of Logistic(0,1) dyad shocks; diagonal unused, set
    to +inf so a self-link can never clear the threshold."""
    u = rng.logistic(0.0, 1.0, size=(n, n))
    out = np.triu(u, k=1)
    out = out + out.T
    np.fill_diagonal(out, np.inf)
    return out


def two_point_heterogeneity(
    n: int, active_prob: float, link_prob: float, rng: np.random.Generator
) -> np.ndarray:
    """Node effects that are 0.5*logit(link_prob) with probability
    active_prob and -inf otherwise, so active pairs link with probability
    link_prob and inactive nodes stay isolated."""
    if not 0 < link_prob < 1:
        raise ValueError("link_prob must lie strictly between 0 and 1")
    high = 0.5 * math.log(link_prob / (1.0 - link_prob))
    return np.where(rng.random(n) < active_prob, high, -np.inf)


@dataclass(frozen=True)
class GameConfig:
    a_tilde: np.ndarray = field(compare=False)
    gamma: float
    kind: str = "transitivity"
    shocks: np.ndarray = field(default=None, compare=False)
    mode: str = "least"

    def __post_init__(self):
        a = np.asarray(self.a_tilde, dtype=np.float64)
        object.__setattr__(self, "a_tilde", a)
        if a.ndim != 1:
            raise ValueError("a_tilde must be a 1-d vector")
        if np.isnan(a).any() or np.isposinf(a).any():
            raise ValueError("a_tilde entries must be finite or -inf")
        if not (np.isfinite(self.gamma) and self.gamma >= 0):
            raise ValueError("gamma must be a finite real >= 0")
        if self.kind not in EXTERNALITY_KINDS:
            raise ValueError(f"kind must be one of {EXTERNALITY_KINDS}, got {self.kind!r}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.shocks is None:
            raise ValueError("shocks matrix is required; use GameConfig.random to draw one")
        u = np.asarray(self.shocks, dtype=np.float64)
        object.__setattr__(self, "shocks", u)
        n = a.shape[0]
        if u.shape != (n, n):
            raise ValueError(f"shocks shape {u.shape} does not match n={n}")
        off = ~np.eye(n, dtype=bool)
        if np.isnan(u[off]).any():
            raise ValueError("shocks must not contain NaN off the diagonal")
        if not np.array_equal(u[off], u.T[off]):
            raise ValueError("shocks must be symmetric off the diagonal")

    @property
    def n(self) -> int:
        return self.a_tilde.shape[0]

    @classmethod
    def random(
        cls,
        a_tilde,
        gamma: float,
        kind: str,
        rng: np.random.Generator,
        mode: str = "least",
    ) -> "GameConfig":
        a = np.asarray(a_tilde, dtype=np.float64)
        return cls(a_tilde=a, gamma=gamma, kind=kind, shocks=draw_shocks(a.shape[0], rng), mode=mode)


def externality_matrix(g: Graph, kind: str) -> np.ndarray:
    """Dyad externality with the (i,j) edge's own contribution excluded, so
    the value is the same whether or not that edge is present."""
    a = g.adjacency.astype(np.float64)
    if kind == "popularity":
        deg = a.sum(axis=1)
        out = deg[:, None] + deg[None, :] - 2.0 * a
    elif kind == "transitivity":
        out = 2.0 * (a @ a)
    else:
        raise ValueError(f"kind must be one of {EXTERNALITY_KINDS}, got {kind!r}")
    np.fill_diagonal(out, 0.0)
    return out


def _surplus(cfg: GameConfig, g: Graph) -> np.ndarray:
    a = cfg.a_tilde
    s = externality_matrix(g, cfg.kind)
    return a[:, None] + a[None, :] + cfg.gamma * s


def marginal_utility(cfg: GameConfig, g: Graph, i: int, j: int) -> float:
    """Joint dyad surplus a_i + a_j + gamma * s_ij(g) - u_ij; the sign
    decides whether (i,j) is worth keeping."""
    if i == j:
        raise ValueError("i and j must differ")
    return float(_surplus(cfg, g)[i, j] - cfg.shocks[i, j])


def phi_map(cfg: GameConfig, g: Graph) -> Graph:
    """Best-response graph: edge (i,j) iff the dyad surplus under g is at
    least the shock u_ij."""
    keep = _surplus(cfg, g) >= cfg.shocks
    np.fill_diagonal(keep, False)
    ii, jj = np.nonzero(np.triu(keep, k=1))
    return Graph.from_edges(cfg.n, zip(ii.tolist(), jj.tolist()))


def find_pairwise_stable(cfg: GameConfig) -> Graph:
    """Iterate phi_map from the empty graph (mode=least) or the complete
    graph (mode=greatest) to the corresponding extremal fixed point.

    Convergence takes at most (n choose 2)+1 passes; the edge set must move
    monotonically, anything else is a logic error.
    """
    g = Graph.empty(cfg.n) if cfg.mode == "least" else Graph.complete(cfg.n)
    cap = cfg.n * (cfg.n - 1) // 2 + 1
    for _ in range(cap + 1):
        nxt = phi_map(cfg, g)
        if nxt.edges == g.edges:
            return g
        if cfg.mode == "least":
            if not g.edges <= nxt.edges:
                raise AssertionError("phi iteration from empty lost an edge")
        else:
            if not nxt.edges <= g.edges:
                raise AssertionError("phi iteration from complete gained an edge")
        g = nxt
    raise RuntimeError(f"fixed point not reached within {cap} iterations")


def is_pairwise_stable(cfg: GameConfig, g: Graph) -> bool:
    """True iff every present dyad has nonnegative surplus net of shocks and
    every absent dyad has strictly negative surplus."""
    if g.n != cfg.n:
        raise ValueError(f"graph has {g.n} nodes, config has {cfg.n}")
    keep = _surplus(cfg, g) >= cfg.shocks
    np.fill_diagonal(keep, False)
    iu = np.triu_indices(cfg.n, k=1)
    return bool(np.array_equal(keep[iu], g.adjacency[iu]))


def sweep(
    n: int,
    gamma_grid,
    kind: str,
    reps: int,
    seed: int,
    a_tilde=None,
) -> list[dict]:
    """Fixed-point statistics over a gamma grid.

    One shock matrix per replication, reused across the whole grid and both
    modes so gamma comparisons are paired. Returns one row dict per
    (gamma, replication, mode) keyed by SWEEP_COLUMNS.
    """
    gammas = [float(x) for x in gamma_grid]
    if any(x < 0 for x in gammas):
        raise ValueError("gamma values must be >= 0")
    if reps < 1:
        raise ValueError("reps must be at least 1")
    base = np.zeros(n) if a_tilde is None else np.asarray(a_tilde, dtype=np.float64)
    rows = []
    for rep in range(1, reps + 1):
        rng = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence(entropy=seed, spawn_key=(rep,)))
        )
        shocks = draw_shocks(n, rng)
        for gamma in gammas:
            for mode in MODES:
                cfg = GameConfig(
                    a_tilde=base, gamma=gamma, kind=kind, shocks=shocks, mode=mode
                )
                g = find_pairwise_stable(cfg)
                rows.append(
                    {
                        "gamma": gamma,
                        "replication": rep,
                        "mode": mode,
                        "edge_count": g.edge_count,
                        "triangle_count": triangle_count(g),
                        "transitivity_index": transitivity_index(g),
                    }
                )
    return rows
