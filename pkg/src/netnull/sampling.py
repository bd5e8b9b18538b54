"""Sequential importance sampling of simple graphs with a fixed degree sequence.

The construction repeatedly takes the node with the smallest positive
residual degree and links it to feasible partners chosen with probability
proportional to their residual degree, until every stub is used. Each draw
records the probability of the realized link sequence (sigma) and the number
of equivalent orderings (c), giving importance weight 1/(c * sigma) up to a
constant.

References
----------
Blitzstein & Diaconis (2011), "A sequential importance sampling algorithm
for generating random graphs with prescribed degrees", Internet Mathematics.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import DegreeSequence, Graph
from .graphical import DeadEndError, require_graphical

__all__ = ["RngStream", "SampledDraw", "sample", "sample_batch"]


@dataclass(frozen=True)
class RngStream:
    """Counter-based RNG address: (seed, stream) fully determines a draw."""

    seed: int
    stream: int

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream,))
        return np.random.Generator(np.random.PCG64(ss))


@dataclass(frozen=True)
class SampledDraw:
    """One sampled graph with its importance-weight bookkeeping.

    log_sigma is the log probability of the realized link sequence under the
    sampler (always <= 0); log_c is the log count of distinct link orderings
    that produce the same graph (always >= 0). The importance weight of the
    draw is exp(log_weight), valid up to a constant shared by the batch.
    """

    graph: Graph
    log_sigma: float
    log_c: float
    link_sequence: tuple[tuple[int, int], ...]

    @property
    def log_weight(self) -> float:
        return -(self.log_c + self.log_sigma)


def _draw_from_uniforms(d: DegreeSequence, uniforms: np.ndarray) -> SampledDraw:
    target = d.as_array()
    m = d.edge_total
    edges_out = np.empty((m, 2), dtype=np.int64)
    status, m_out, log_sigma, log_c = _kernels.sample_kernel(target, uniforms, edges_out)
    if status != _kernels.STATUS_OK or m_out != m:
        raise DeadEndError(
            f"construction stalled after {m_out}/{m} edges for degrees {d.degrees}"
        )
    link_sequence = tuple((int(a), int(b)) for a, b in edges_out)
    graph = Graph.from_edges(d.n, link_sequence)
    if tuple(int(x) for x in graph.degrees) != d.degrees:
        raise DeadEndError(f"draw degree sequence differs from target {d.degrees}")
    return SampledDraw(graph, float(log_sigma), float(log_c), link_sequence)


def sample(d, rng: RngStream) -> SampledDraw:
    """Draw one graph with degree sequence exactly d.

    Consumes exactly sum(d)/2 uniforms from the stream, one per edge pick,
    so identical (seed, stream) pairs give bit-identical draws.
    """
    ds = DegreeSequence.coerce(d)
    require_graphical(ds.degrees)
    uniforms = rng.generator().random(ds.edge_total)
    return _draw_from_uniforms(ds, uniforms)


def sample_batch(d, count: int, seed: int, threads: int = 1, start_stream: int = 1):
    """Draw `count` independent graphs; draw b uses stream id start_stream+b-1.

    The result is a list ordered by stream id and does not depend on the
    execution schedule; threads only buys wall time.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    ds = DegreeSequence.coerce(d)
    require_graphical(ds.degrees)
    streams = range(start_stream, start_stream + count)
    if threads <= 1:
        return [sample(ds, RngStream(seed, b)) for b in streams]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda b: sample(ds, RngStream(seed, b)), streams))
