"""Immutable simple-graph representation and edge-list ingestion.

Nodes are dense 0-based indices. Input labels (integers or strings) are
mapped to indices in first-appearance order and kept around for reporting.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Graph",
    "DegreeSequence",
    "EdgeListParseError",
    "parse_edge_list",
    "serialize_edge_list",
    "degree_sequence",
]


class EdgeListParseError(ValueError):
    """Raised on malformed edge-list input; carries the offending line number.

    ``line`` is None for failures without a position, such as an unreadable
    file.
    """

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


def _normalize_edge(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Graph:
    """Simple undirected labeled graph.

    Parameters
    ----------
    n : int
        Node count. Nodes are 0..n-1.
    edges : frozenset of (int, int)
        Unordered pairs stored as sorted tuples, no self loops.
    labels : tuple, optional
        Original node labels, index aligned. Defaults to the indices as
        strings, which is what parsing the serialized form yields.
    """

    n: int
    edges: frozenset[tuple[int, int]]
    labels: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("node count must be non-negative")
        for i, j in self.edges:
            if i == j:
                raise ValueError(f"self loop at node {i}")
            if i > j:
                raise ValueError(f"edge ({i},{j}) not stored sorted")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge ({i},{j}) outside node range 0..{self.n - 1}")
        if self.labels and len(self.labels) != self.n:
            raise ValueError("labels length must equal node count")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(self.n)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels: tuple = ()) -> "Graph":
        return cls(n, frozenset(_normalize_edge(i, j) for i, j in edges), labels)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, frozenset())

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, frozenset((i, j) for i in range(n) for j in range(i + 1, n)))

    @cached_property
    def adjacency(self) -> np.ndarray:
        """Symmetric boolean adjacency matrix with zero diagonal."""
        a = np.zeros((self.n, self.n), dtype=bool)
        if self.edges:
            idx = np.array(sorted(self.edges), dtype=np.intp)
            a[idx[:, 0], idx[:, 1]] = True
            a[idx[:, 1], idx[:, 0]] = True
        return a

    @cached_property
    def degrees(self) -> np.ndarray:
        if not self.edges:
            return np.zeros(self.n, dtype=np.int64)
        flat = np.array(list(self.edges), dtype=np.intp).ravel()
        return np.bincount(flat, minlength=self.n).astype(np.int64)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        return _normalize_edge(i, j) in self.edges

    def with_edge(self, i: int, j: int) -> "Graph":
        """Return a copy with edge (i, j) added; the edge must be absent."""
        if i == j:
            raise ValueError("self loops are not allowed")
        e = _normalize_edge(i, j)
        if e in self.edges:
            raise ValueError(f"edge {e} already present")
        return Graph(self.n, self.edges | {e}, self.labels)

    def without_edge(self, i: int, j: int) -> "Graph":
        """Return a copy with edge (i, j) removed; the edge must be present."""
        e = _normalize_edge(i, j)
        if e not in self.edges:
            raise ValueError(f"edge {e} not present")
        return Graph(self.n, self.edges - {e}, self.labels)


@dataclass(frozen=True)
class DegreeSequence:
    """Ordered vector of node degrees, the statistic the test conditions on."""

    degrees: tuple[int, ...]

    def __post_init__(self):
        if any(d < 0 for d in self.degrees):
            raise ValueError("degrees must be non-negative")

    @classmethod
    def coerce(cls, seq) -> "DegreeSequence":
        if isinstance(seq, DegreeSequence):
            return seq
        return cls(tuple(int(d) for d in seq))

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def total(self) -> int:
        return sum(self.degrees)

    @property
    def edge_total(self) -> int:
        return self.total // 2

    def as_array(self) -> np.ndarray:
        return np.asarray(self.degrees, dtype=np.int64)

    def __iter__(self):
        return iter(self.degrees)

    def __len__(self):
        return len(self.degrees)

    def __getitem__(self, i):
        return self.degrees[i]


def degree_sequence(g: Graph) -> DegreeSequence:
    """Degree of every node, index aligned; entries sum to twice the edge count."""
    return DegreeSequence(tuple(int(d) for d in g.degrees))


_NODES_DIRECTIVE = "# nodes:"
_NODE_DIRECTIVE = "# node:"


def parse_edge_list(text: str) -> Graph:
    """Parse an edge list into a Graph.

    Format: one edge per line, two whitespace-separated labels; ``#`` starts
    a comment line. Two comment directives are honored: ``# nodes: N`` fixes
    the node count, and ``# node: LABEL`` pre-registers a label at the next
    free index (serialize emits one per node so isolated nodes and index
    order survive a round trip). Labels are densified to 0-based indices in
    first-appearance order.

    Raises
    ------
    EdgeListParseError
        On a self loop or a malformed line, naming the line number.

    Warns on duplicate edges, which are collapsed.
    """
    index: dict[str, int] = {}
    edges: set[tuple[int, int]] = set()
    declared_n: int | None = None
    duplicates = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            low = line.lower()
            if low.startswith(_NODES_DIRECTIVE):
                tail = line[len(_NODES_DIRECTIVE):].strip()
                try:
                    declared_n = int(tail)
                except ValueError:
                    raise EdgeListParseError(f"bad node count {tail!r}", lineno) from None
                if declared_n < 0:
                    raise EdgeListParseError("node count must be non-negative", lineno)
            elif low.startswith(_NODE_DIRECTIVE):
                label = line[len(_NODE_DIRECTIVE):].strip()
                if not label:
                    raise EdgeListParseError("empty node label", lineno)
                if label in index:
                    raise EdgeListParseError(f"label {label!r} declared twice", lineno)
                index[label] = len(index)
            continue
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise EdgeListParseError(
                f"expected two labels, got {len(tokens)}: {line!r}", lineno
            )
        a, b = tokens
        if a == b:
            raise EdgeListParseError(f"self loop on {a!r}", lineno)
        ia = index.setdefault(a, len(index))
        ib = index.setdefault(b, len(index))
        e = _normalize_edge(ia, ib)
        if e in edges:
            duplicates += 1
        else:
            edges.add(e)
    n = len(index)
    if declared_n is not None:
        if declared_n < n:
            raise EdgeListParseError(
                f"declared node count {declared_n} below the {n} distinct labels seen", 1
            )
        n = declared_n
    if duplicates:
        warnings.warn(f"collapsed {duplicates} duplicate edge(s)", stacklevel=2)
    labels = [None] * len(index)
    for label, i in index.items():
        labels[i] = label
    labels.extend(str(i) for i in range(len(index), n))
    return Graph(n, frozenset(edges), tuple(labels))


def serialize_edge_list(g: Graph) -> str:
    """Serialize to the edge-list format; inverse of :func:`parse_edge_list`.

    Emits a node-count header, one ``# node:`` directive per node in index
    order, then one sorted "i j" line per edge, all using the graph's
    labels. Labels must be unique and whitespace-free to stay parseable.
    """
    seen = set()
    for label in g.labels:
        text = str(label)
        if not text or text.split() != [text] or text.startswith("#"):
            raise ValueError(f"label {label!r} cannot survive an edge-list round trip")
        if text in seen:
            raise ValueError(f"duplicate label {label!r}")
        seen.add(text)
    lines = [f"# nodes: {g.n}"]
    for label in g.labels:
        lines.append(f"# node: {label}")
    for i, j in sorted(g.edges):
        lines.append(f"{g.labels[i]} {g.labels[j]}")
    return "\n".join(lines) + "\n"
