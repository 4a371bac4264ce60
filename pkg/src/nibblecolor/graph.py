"""Immutable simple graphs, triangle-free instance generators and checks."""

from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.sparse as sp


class GraphError(ValueError):
    pass


class NotTriangleFreeError(GraphError):
    def __init__(self, triple):
        self.triple = tuple(int(x) for x in triple)
        super().__init__(f"graph contains the triangle {self.triple}")


class IncompleteColoringError(ValueError):
    def __init__(self, uncolored):
        self.uncolored = [int(u) for u in uncolored]
        shown = self.uncolored[:10]
        more = "" if len(self.uncolored) <= 10 else f" (+{len(self.uncolored) - 10} more)"
        super().__init__(f"uncolored vertices: {shown}{more}")


class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    Edges are stored once each as ``(u, v)`` with ``u < v``, sorted
    lexicographically. Neighbors live in CSR form (``indptr``/``indices``)
    with each neighbor array sorted ascending.
    """

    def __init__(self, n, edges=()):
        n = int(n)
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        e = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                       dtype=np.int64).reshape(-1, 2)
        if e.size:
            if e.min() < 0 or e.max() >= n:
                raise GraphError("edge endpoint out of range")
            if np.any(e[:, 0] == e[:, 1]):
                raise GraphError("self-loops are not allowed")
            e = np.sort(e, axis=1)
            order = np.lexsort((e[:, 1], e[:, 0]))
            e = e[order]
            if np.any(np.all(e[1:] == e[:-1], axis=1)):
                raise GraphError("duplicate edges are not allowed")
        self.n = n
        self.edges = e
        self.edges.setflags(write=False)

        src = np.concatenate([e[:, 0], e[:, 1]])
        dst = np.concatenate([e[:, 1], e[:, 0]])
        order = np.lexsort((dst, src))
        self.indices = dst[order]
        self.indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=self.indptr[1:])
        self.indices.setflags(write=False)
        self.indptr.setflags(write=False)

    @property
    def m(self):
        return len(self.edges)

    def neighbors(self, u):
        return self.indices[self.indptr[u]:self.indptr[u + 1]]

    @cached_property
    def degrees(self):
        d = np.diff(self.indptr)
        d.setflags(write=False)
        return d

    @cached_property
    def max_degree(self):
        return int(self.degrees.max()) if self.n else 0

    @cached_property
    def adjacency(self):
        """Symmetric 0/1 adjacency as a CSR matrix (int64 entries)."""
        data = np.ones(len(self.indices), dtype=np.int64)
        return sp.csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))

    def __eq__(self, other):
        return (isinstance(other, Graph) and self.n == other.n
                and np.array_equal(self.edges, other.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m}, max_degree={self.max_degree})"


@dataclass
class Coloring:
    """Per-vertex color ids; ``-1`` marks an uncolored vertex."""

    assignment: np.ndarray
    num_colors: int

    def __post_init__(self):
        self.assignment = np.asarray(self.assignment, dtype=np.int64)
        if np.any(self.assignment >= self.num_colors):
            raise ValueError("color id out of range")

    @property
    def colors_used(self):
        a = self.assignment
        return len(np.unique(a[a >= 0]))


# -- generators ------------------------------------------------------------

def gen_complete_bipartite(m):
    """``K_{m,m}``: left side ``0..m-1``, right side ``m..2m-1``."""
    if m < 1:
        raise GraphError("side size must be at least 1")
    left, right = np.meshgrid(np.arange(m), np.arange(m, 2 * m), indexing="ij")
    return Graph(2 * m, np.column_stack([left.ravel(), right.ravel()]))


def gen_random_bipartite(n_per_side, edge_prob, seed):
    if n_per_side < 1:
        raise GraphError("side size must be at least 1")
    if not 0.0 <= edge_prob <= 1.0:
        raise GraphError("edge probability must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    mask = rng.random((n_per_side, n_per_side)) < edge_prob
    left, right = np.nonzero(mask)
    return Graph(2 * n_per_side, np.column_stack([left, right + n_per_side]))


def gen_random_triangle_free(n, target_degree, seed):
    """Random greedy triangle-free process with a degree cap.

    Uniform random pairs are proposed; a pair is added when it is not already
    an edge, its endpoints share no neighbor and both degrees are below
    ``target_degree``. The process stops after ``50 * n`` consecutive
    rejected proposals.
    """
    if n < 1 or target_degree < 1:
        raise GraphError("n and target_degree must be positive")
    if target_degree >= n:
        raise GraphError("target_degree must be smaller than n")
    rng = np.random.default_rng(seed)
    adj = [set() for _ in range(n)]
    edges = []
    budget = 50 * n
    rejected = 0
    while rejected < budget:
        pairs = rng.integers(0, n, size=(4096, 2))
        for u, v in pairs.tolist():
            if (u == v or v in adj[u] or len(adj[u]) >= target_degree
                    or len(adj[v]) >= target_degree or not adj[u].isdisjoint(adj[v])):
                rejected += 1
                if rejected >= budget:
                    break
                continue
            adj[u].add(v)
            adj[v].add(u)
            edges.append((u, v))
            rejected = 0
    return Graph(n, edges)


# -- queries ---------------------------------------------------------------

def find_triangle(g):
    """Return one triangle ``(u, v, w)`` or ``None``."""
    if g.m == 0:
        return None
    a = g.adjacency
    # common-neighbor counts restricted to edges
    common = (a @ a).multiply(a).tocoo()
    hit = np.flatnonzero(common.data)
    if hit.size == 0:
        return None
    u, v = int(common.row[hit[0]]), int(common.col[hit[0]])
    w = int(np.intersect1d(g.neighbors(u), g.neighbors(v), assume_unique=True)[0])
    return tuple(sorted((u, v, w)))


def is_triangle_free(g):
    return find_triangle(g) is None


def verify_proper(g, coloring):
    """All edges whose endpoints share a color; an empty list means proper."""
    a = np.asarray(coloring.assignment if isinstance(coloring, Coloring) else coloring)
    if len(a) != g.n:
        raise ValueError("coloring length does not match vertex count")
    missing = np.flatnonzero(a < 0)
    if missing.size:
        raise IncompleteColoringError(missing)
    e = g.edges
    bad = e[a[e[:, 0]] == a[e[:, 1]]]
    return [(int(u), int(v)) for u, v in bad]
