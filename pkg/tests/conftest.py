"""Shared brute-force oracles.

Everything here is written independently of the package internals so the
tests cross two implementations, not one implementation against itself.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

import pytest

# degree sequences whose reference classes are small enough to enumerate
SMALL_CLASSES = [
    (1, 1),
    (2, 2, 2),
    (2, 2, 1, 1),
    (3, 3, 3, 3, 3, 3),
]

# oracle class sizes for SMALL_CLASSES, confirmed by brute force below
SMALL_CLASS_SIZES = {
    (1, 1): 1,
    (2, 2, 2): 1,
    (2, 2, 1, 1): 2,
    (3, 3, 3, 3, 3, 3): 70,
}


def all_pairs(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


@lru_cache(maxsize=None)
def graphs_by_degree(n: int) -> dict:
    """Every labeled simple graph on n nodes, grouped by degree sequence.

    Pure bitmask sweep over the 2^(n(n-1)/2) edge subsets; the ground truth
    the package's enumeration and graphicality code are tested against.
    """
    pairs = all_pairs(n)
    out: dict[tuple, list[frozenset]] = {}
    for mask in range(1 << len(pairs)):
        deg = [0] * n
        edges = []
        for bit, (i, j) in enumerate(pairs):
            if mask >> bit & 1:
                deg[i] += 1
                deg[j] += 1
                edges.append((i, j))
        out.setdefault(tuple(deg), []).append(frozenset(edges))
    return out


def brute_force_class(degrees: tuple) -> list[frozenset]:
    return graphs_by_degree(len(degrees)).get(tuple(degrees), [])


def ref_is_graphical(seq) -> bool:
    """Textbook quadratic Erdos-Gallai check, kept deliberately naive."""
    d = sorted(seq, reverse=True)
    n = len(d)
    if any(x < 0 for x in d):
        return False
    if sum(d) % 2 == 1:
        return False
    for k in range(1, n + 1):
        lhs = sum(d[:k])
        rhs = k * (k - 1) + sum(min(x, k) for x in d[k:])
        if lhs > rhs:
            return False
    return True


def ref_draw(degrees, uniforms):
    """Pure-Python mirror of the sampling kernel.

    Consumes the same uniform stream in the same order and returns
    (ordered (active, partner) list, log_sigma, log_c). Used to pin down
    the compiled kernel's behavior draw by draw.
    """
    n = len(degrees)
    res = list(degrees)
    adj = [[False] * n for _ in range(n)]
    edges = []
    log_sigma = 0.0
    log_c = 0.0
    u_idx = 0
    while sum(res) > 0:
        i = min((v for v in range(n) if res[v] > 0), key=lambda v: (res[v], v))
        log_c += math.lgamma(res[i] + 1)
        while res[i] > 0:
            cand = []
            for j in range(n):
                if j == i or adj[i][j] or res[j] == 0:
                    continue
                trial = list(res)
                trial[i] -= 1
                trial[j] -= 1
                if ref_is_graphical(trial):
                    cand.append(j)
            assert cand, "reference sampler hit a dead end"
            weights = [res[j] for j in cand]
            total = sum(weights)
            r = uniforms[u_idx] * total
            u_idx += 1
            acc = 0.0
            chosen = cand[-1]
            for j, w in zip(cand, weights):
                acc += w
                if r < acc:
                    chosen = j
                    break
            log_sigma += math.log(res[chosen]) - math.log(total)
            adj[i][chosen] = adj[chosen][i] = True
            edges.append((i, chosen))
            res[i] -= 1
            res[chosen] -= 1
    return edges, log_sigma, log_c


@pytest.fixture
def tmp_edge_file(tmp_path):
    def write(text: str, name: str = "g.edges"):
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        return str(p)

    return write
