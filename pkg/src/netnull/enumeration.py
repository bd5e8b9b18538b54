"""Brute-force enumeration of every labeled simple graph with a given degree
sequence, for ground-truth checks and exact small-sample inference."""

from __future__ import annotations

from fractions import Fraction

from .graph import DegreeSequence, Graph

__all__ = ["enumerate_graphs", "exact_distribution", "exact_pvalue"]

DEFAULT_NODE_CAP = 8


def enumerate_graphs(d, max_nodes: int = DEFAULT_NODE_CAP) -> list[Graph]:
    """All distinct labeled graphs realizing d, in lexicographic edge order.

    Depth-first search over pair inclusion with residual-degree pruning:
    a pair is skipped only if both endpoints can still meet their demand
    from later pairs, so every leaf is a valid realization.

    Raises if n exceeds max_nodes (default 8); pass a larger cap explicitly
    to override.
    """
    ds = DegreeSequence.coerce(d)
    n = ds.n
    if n > max_nodes:
        raise ValueError(f"n={n} exceeds the enumeration cap of {max_nodes} nodes")
    if ds.total % 2 == 1 or any(v > n - 1 for v in ds.degrees):
        return []
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    res = list(ds.degrees)
    cap = [n - 1] * n  # pairs at index >= t incident to each node
    out: list[Graph] = []
    chosen: list[tuple[int, int]] = []

    def walk(t: int) -> None:
        if t == len(pairs):
            out.append(Graph.from_edges(n, chosen))
            return
        i, j = pairs[t]
        cap[i] -= 1
        cap[j] -= 1
        # include first: yields lexicographically increasing edge sets
        if res[i] > 0 and res[j] > 0:
            res[i] -= 1
            res[j] -= 1
            chosen.append((i, j))
            walk(t + 1)
            chosen.pop()
            res[i] += 1
            res[j] += 1
        if res[i] <= cap[i] and res[j] <= cap[j]:
            walk(t + 1)
        cap[i] += 1
        cap[j] += 1

    walk(0)
    return out


def _evaluate(stat, graph: Graph):
    if callable(stat):
        return stat(graph)
    from .stats import evaluate_statistic

    return evaluate_statistic(str(stat), graph).value


def exact_distribution(d, stat, max_nodes: int = DEFAULT_NODE_CAP):
    """Exact statistic distribution over the class: (sorted values, Fraction masses).

    stat is a statistic name or any callable Graph -> value.
    """
    graphs = enumerate_graphs(d, max_nodes=max_nodes)
    if not graphs:
        raise ValueError(f"no graph realizes degree sequence {tuple(d)}")
    counts: dict = {}
    for g in graphs:
        v = _evaluate(stat, g)
        counts[v] = counts.get(v, 0) + 1
    total = len(graphs)
    values = sorted(counts)
    masses = [Fraction(counts[v], total) for v in values]
    return values, masses


def exact_pvalue(d, stat, observed_value, comparison: str = "geq",
                 max_nodes: int = DEFAULT_NODE_CAP) -> Fraction:
    """Exact tail mass of the statistic over the class, as a Fraction.

    comparison "geq" counts graphs with stat >= observed_value, "gt" strictly
    above.
    """
    if comparison not in ("geq", "gt"):
        raise ValueError(f"comparison must be 'geq' or 'gt', got {comparison!r}")
    graphs = enumerate_graphs(d, max_nodes=max_nodes)
    if not graphs:
        raise ValueError(f"no graph realizes degree sequence {tuple(d)}")
    geq = comparison == "geq"
    hits = 0
    for g in graphs:
        v = _evaluate(stat, g)
        if (v >= observed_value) if geq else (v > observed_value):
            hits += 1
    return Fraction(hits, len(graphs))
