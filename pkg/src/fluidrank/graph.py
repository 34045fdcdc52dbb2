"""Sparse directed graphs loaded from plain edge lists.

Adjacency is stored in compressed form (``indptr``/``indices``): the
successors of node ``i`` are ``indices[indptr[i]:indptr[i + 1]]``, sorted
ascending with duplicates removed. This is the column structure of the
damped transition matrix, whose coordinate for edge ``i -> j`` is
``d / outdeg(i)``; dangling columns are all zero.
"""

from collections import deque
from dataclasses import dataclass

import numpy as np

from .exceptions import GraphParseError, NodeRangeError

_INDEX_MAX = np.iinfo(np.intp).max


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable directed graph on nodes ``0..n-1``."""

    n: int
    indptr: np.ndarray
    indices: np.ndarray
    in_degree: np.ndarray

    def __post_init__(self):
        for arr in (self.indptr, self.indices, self.in_degree):
            arr.setflags(write=False)

    @classmethod
    def from_edges(cls, edges, n=None):
        """Build a graph from an iterable or ``(m, 2)`` array of ``(src, dst)`` pairs.

        Duplicate edges collapse to one. ``n`` defaults to one more than the
        largest node id.
        """
        pairs = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                           dtype=np.int64).reshape(-1, 2)
        if pairs.size and pairs.min() < 0:
            raise ValueError("node ids must be non-negative")
        if n is None:
            n = int(pairs.max()) + 1 if pairs.size else 0
        elif pairs.size and pairs.max() >= n:
            raise ValueError(f"edge endpoint out of range for n={n}")
        if pairs.size:
            pairs = np.unique(pairs, axis=0)
        src, dst = pairs[:, 0], pairs[:, 1]
        out_degree = np.bincount(src, minlength=n).astype(np.int64)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(out_degree, out=indptr[1:])
        in_degree = np.bincount(dst, minlength=n).astype(np.int64)
        return cls(int(n), indptr, np.ascontiguousarray(dst, dtype=np.int64), in_degree)

    @property
    def n_edges(self):
        return int(self.indices.shape[0])

    @property
    def out_degree(self):
        return np.diff(self.indptr)

    @property
    def out_adj(self):
        return [self.successors(i) for i in range(self.n)]

    def successors(self, i):
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    def edges(self):
        """``(m, 2)`` array of edges in (src, dst) lexicographic order."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.out_degree)
        return np.column_stack([src, self.indices])

    def transition_matrix(self, damping):
        """Dense damped transition matrix ``P`` with ``P[j, i] = d / outdeg(i)``.

        Meant for small graphs and brute-force checks.
        """
        p = np.zeros((self.n, self.n))
        deg = self.out_degree
        for i in range(self.n):
            if deg[i]:
                p[self.successors(i), i] = damping / deg[i]
        return p

    def __repr__(self):
        return f"Graph(n={self.n}, n_edges={self.n_edges})"


@dataclass(frozen=True)
class GraphStats:
    """Summary counts of a graph.

    ``e_count`` counts nodes that are recursively zero in-degree: nodes all
    of whose in-neighbours are themselves recursively zero in-degree.
    """

    n: int
    l: int
    d_count: int
    e_count: int
    o_count: int
    max_in: int
    max_out: int

    def ratios(self):
        """``(L/N, D/N, E/N, O/N)``, all zero for an empty graph."""
        if self.n == 0:
            return (0.0, 0.0, 0.0, 0.0)
        n = self.n
        return (self.l / n, self.d_count / n, self.e_count / n, self.o_count / n)


def _parse_id(token, lineno):
    try:
        value = int(token)
    except ValueError:
        raise GraphParseError(lineno, f"not an integer: {token!r}") from None
    if value < 0:
        raise GraphParseError(lineno, f"negative node id: {token!r}")
    if value >= _INDEX_MAX:
        raise NodeRangeError(f"line {lineno}: node id {value} exceeds index range")
    return value


def load_edge_list(source, node_limit=None):
    """Read a whitespace-separated ``src dst`` edge list from a text stream.

    Blank lines and lines starting with ``#`` are skipped. With
    ``node_limit=N`` only edges between the first ``N`` nodes are kept and
    the graph has exactly ``N`` nodes.
    """
    if node_limit is not None and node_limit <= 0:
        raise ValueError("node_limit must be a positive integer")
    src, dst = [], []
    for lineno, line in enumerate(source, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if len(tokens) != 2:
            raise GraphParseError(lineno, f"expected 2 tokens, got {len(tokens)}")
        i = _parse_id(tokens[0], lineno)
        j = _parse_id(tokens[1], lineno)
        if node_limit is not None and (i >= node_limit or j >= node_limit):
            continue
        src.append(i)
        dst.append(j)
    edges = np.column_stack([np.array(src, dtype=np.int64), np.array(dst, dtype=np.int64)])
    return Graph.from_edges(edges, n=node_limit)


def read_edge_list(path, node_limit=None):
    with open(path, encoding="ascii") as fh:
        return load_edge_list(fh, node_limit=node_limit)


def compute_stats(g):
    """Return the :class:`GraphStats` of ``g``. Runs in ``O(n + L)``."""
    out_degree = g.out_degree
    src = np.repeat(np.arange(g.n), out_degree)
    o_count = int(np.count_nonzero(src == g.indices))

    # least fixed point: a node joins once all its in-neighbours have joined
    pending = g.in_degree.copy()
    queue = deque(np.flatnonzero(pending == 0).tolist())
    e_count = 0
    while queue:
        i = queue.popleft()
        e_count += 1
        for j in g.successors(i):
            pending[j] -= 1
            if pending[j] == 0:
                queue.append(int(j))

    return GraphStats(
        n=g.n,
        l=g.n_edges,
        d_count=int(np.count_nonzero(out_degree == 0)),
        e_count=e_count,
        o_count=o_count,
        max_in=int(g.in_degree.max()) if g.n else 0,
        max_out=int(out_degree.max()) if g.n else 0,
    )
