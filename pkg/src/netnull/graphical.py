"""Graphicality deciders and residual-sequence operations.

The Erdos-Gallai inequalities are the primary decider; a Havel-Hakimi
reduction is kept as an independent second decider for cross-checks.
"""

from __future__ import annotations

import numpy as np

from .graph import Graph

__all__ = [
    "NotGraphicalError",
    "DeadEndError",
    "is_graphical",
    "erdos_gallai_violation",
    "havel_hakimi_graphical",
    "havel_hakimi_reduce",
    "decrement",
    "candidate_partners",
]

ODD_SUM = 0  # violation code when the degree total is odd


class NotGraphicalError(ValueError):
    """A degree sequence admits no simple graph.

    ``violation`` is 0 when the degree total is odd, otherwise the 1-based
    index k of the first failing Erdos-Gallai inequality.
    """

    def __init__(self, degrees, violation: int):
        what = (
            "degree total is odd"
            if violation == ODD_SUM
            else f"Erdos-Gallai inequality fails at k={violation}"
        )
        super().__init__(f"sequence {tuple(degrees)} is not graphical: {what}")
        self.violation = violation


class DeadEndError(RuntimeError):
    """Internal logic bug: no feasible partner exists for a graphical state."""


def _as_degree_array(seq) -> np.ndarray:
    d = np.asarray(list(seq), dtype=np.int64)
    if d.ndim != 1:
        raise ValueError("degree sequence must be one-dimensional")
    if d.size and d.min() < 0:
        raise ValueError("degrees must be non-negative")
    return d


def erdos_gallai_violation(seq) -> int | None:
    """First failing Erdos-Gallai condition, or None if the sequence is graphical.

    Returns 0 for an odd degree total, otherwise the smallest 1-based k with
    sum of the k largest degrees above k(k-1) + sum_{l>k} min(d_l, k).
    """
    d = _as_degree_array(seq)
    n = d.size
    if n == 0:
        return None
    total = int(d.sum())
    if total % 2:
        return ODD_SUM
    asc = np.sort(d)
    desc = asc[::-1]
    if desc[0] > n - 1:
        return 1
    prefix = np.cumsum(desc)
    asc_prefix = np.concatenate(([0], np.cumsum(asc)))
    k = np.arange(1, n + 1)
    # entries >= k, and the total of entries < k, over the whole sequence
    cnt_ge = n - np.searchsorted(asc, k, side="left")
    sum_lt = asc_prefix[n - cnt_ge]
    tail = k * np.maximum(cnt_ge - k, 0) + np.minimum(sum_lt, total - prefix)
    bad = prefix > k * (k - 1) + tail
    if not bad.any():
        return None
    return int(k[bad][0])


def is_graphical(seq) -> bool:
    """True iff some simple undirected graph realizes the degree sequence."""
    return erdos_gallai_violation(seq) is None


def require_graphical(seq) -> None:
    v = erdos_gallai_violation(seq)
    if v is not None:
        raise NotGraphicalError(seq, v)


def havel_hakimi_reduce(seq, i: int):
    """One reduction step: drop entry i, subtract 1 from its d_i largest peers.

    Defined only when at least d_i other entries are positive; a graphical
    sequence always satisfies this.
    """
    d = list(_as_degree_array(seq))
    if not 0 <= i < len(d):
        raise IndexError(f"index {i} out of range")
    k = d.pop(i)
    order = sorted(range(len(d)), key=lambda t: d[t], reverse=True)
    if k > len(d) or (k > 0 and d[order[k - 1]] <= 0):
        raise ValueError("reduction infeasible: not enough positive peers")
    for t in order[:k]:
        d[t] -= 1
    return tuple(d)


def havel_hakimi_graphical(seq) -> bool:
    """Independent decider by repeated reduction at the maximum entry."""
    d = sorted(_as_degree_array(seq), reverse=True)
    while d and d[0] > 0:
        k = d[0]
        rest = d[1:]
        if k > len(rest) or rest[k - 1] <= 0:
            return False
        for t in range(k):
            rest[t] -= 1
        rest.sort(reverse=True)
        d = rest
    return True


def decrement(seq, i: int, j: int):
    """Residual sequence after assigning edge (i, j): entries i and j drop by 1."""
    d = _as_degree_array(seq)
    n = d.size
    if i == j:
        raise ValueError("i and j must differ")
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"indices ({i},{j}) out of range for n={n}")
    if d[i] < 1 or d[j] < 1:
        raise ValueError(f"cannot decrement ({i},{j}): residual degree is zero")
    out = d.copy()
    out[i] -= 1
    out[j] -= 1
    return tuple(int(x) for x in out)


def feasible_partner_degrees(residual, i: int) -> set[int]:
    """Residual-degree values v such that pairing i with a v-degree node keeps
    the remaining sequence graphical.

    Feasibility depends on a candidate only through its residual degree, so
    one check per distinct value suffices.
    """
    d = _as_degree_array(residual)
    if d[i] < 1:
        raise ValueError(f"node {i} has no residual degree")
    base = d.copy()
    base[i] -= 1
    values = {int(v) for t, v in enumerate(d) if t != i and v >= 1}
    feasible = set()
    for v in sorted(values):
        probe = base.copy()
        # lower one copy of value v held by some node other than i
        for t in range(d.size):
            if t != i and d[t] == v:
                probe[t] -= 1
                break
        if is_graphical(probe):
            feasible.add(v)
    return feasible


def candidate_partners(residual, g: Graph, i: int) -> list[int]:
    """All j that node i may link to next: no existing (i, j) edge and the
    decremented residual sequence stays graphical. Ascending order.

    Raises DeadEndError if the residual sequence is graphical with work left
    at node i yet no candidate exists; the construction guarantees this never
    happens, so it signals an internal bug.
    """
    d = _as_degree_array(residual)
    if g.n != d.size:
        raise ValueError("residual length must match graph node count")
    feasible = feasible_partner_degrees(d, i)
    out = [
        j
        for j in range(d.size)
        if j != i and d[j] >= 1 and not g.has_edge(i, j) and int(d[j]) in feasible
    ]
    if not out and is_graphical(d):
        raise DeadEndError(
            f"no feasible partner for node {i} in graphical residual {tuple(d)}"
        )
    return out
