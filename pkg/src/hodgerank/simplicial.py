"""Simple graphs, their 3-clique complexes, and signed incidence matrices.

The complex of a graph keeps nodes, links and filled triangles (3-cliques),
all stored as strictly increasing index tuples in lexicographic order.  That
ordering fixes the orientation convention once and for all, which makes the
incidence matrices reproducible bit-for-bit:

* ``incidence_1`` maps node values to link differences: row (i, j) holds
  -1 at column i and +1 at column j, so applying it to a node vector w
  yields w_j - w_i per link.
* ``incidence_2`` maps link values to triangle circulations: row (i, j, k)
  holds +1 at link (i, j), -1 at link (i, k), +1 at link (j, k), the
  alternating-sign boundary pattern.  The composition of the two operators
  is identically zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import connected_components as _graph_components

from ._validation import check_edge_array

__all__ = [
    "Graph",
    "CliqueComplex",
    "ComplexStats",
    "build_clique_complex",
    "incidence_1",
    "incidence_2",
    "complex_stats",
    "n_components",
]

BETTI_SIZE_CAP = 2000


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on nodes 0..n_nodes-1.

    Each edge is stored once as a (min, max) row of an int64 array sorted
    lexicographically; construction validates that there are no self-loops
    and no duplicates.
    """

    n_nodes: int
    edges: np.ndarray

    def __post_init__(self):
        if self.n_nodes < 0:
            raise ValueError("n_nodes must be nonnegative")
        object.__setattr__(self, "edges", check_edge_array(self.edges, self.n_nodes))

    @classmethod
    def from_edges(cls, n_nodes: int, pairs) -> "Graph":
        """Build from an iterable of unordered pairs, normalizing order."""
        arr = np.asarray(list(pairs), dtype=np.int64).reshape(-1, 2)
        if arr.size:
            arr = np.sort(arr, axis=1)
            order = np.lexsort((arr[:, 1], arr[:, 0]))
            arr = arr[order]
        return cls(n_nodes, arr)

    @property
    def n_edges(self) -> int:
        return self.edges.shape[0]

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.bincount(self.edges.ravel(), minlength=self.n_nodes)

    def adjacency_matrix(self) -> np.ndarray:
        """Dense boolean adjacency matrix."""
        adj = np.zeros((self.n_nodes, self.n_nodes), dtype=bool)
        if self.n_edges:
            adj[self.edges[:, 0], self.edges[:, 1]] = True
            adj[self.edges[:, 1], self.edges[:, 0]] = True
        return adj


@dataclass(frozen=True)
class CliqueComplex:
    """3-clique complex: nodes, links and filled triangles of a graph.

    Simplex tuples are strictly increasing and listed lexicographically;
    kappa = (number of nodes, links, triangles).
    """

    n_nodes: int
    links: np.ndarray
    triangles: np.ndarray

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(self.n_nodes, dtype=np.int64)

    @property
    def kappa(self) -> tuple[int, int, int]:
        return (self.n_nodes, self.links.shape[0], self.triangles.shape[0])

    @cached_property
    def _link_keys(self) -> np.ndarray:
        # sorted because links are lexicographic; used for O(log) row lookup
        return self.links[:, 0] * np.int64(max(self.n_nodes, 1)) + self.links[:, 1]

    @cached_property
    def link_index(self) -> dict[tuple[int, int], int]:
        return {(int(i), int(j)): r for r, (i, j) in enumerate(self.links)}

    @cached_property
    def triangle_index(self) -> dict[tuple[int, int, int], int]:
        return {(int(i), int(j), int(k)): r for r, (i, j, k) in enumerate(self.triangles)}

    def link_rows(self, pairs: np.ndarray) -> np.ndarray:
        """Row indices of (i, j) pairs (i < j); raises if any pair is absent."""
        pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        n_links = self.links.shape[0]
        if n_links == 0:
            if pairs.shape[0]:
                raise KeyError("pair is not a link of the complex")
            return np.empty(0, dtype=np.int64)
        keys = pairs[:, 0] * np.int64(max(self.n_nodes, 1)) + pairs[:, 1]
        rows = np.searchsorted(self._link_keys, keys)
        bad = (rows >= n_links) | (self._link_keys[np.minimum(rows, n_links - 1)] != keys)
        if np.any(bad):
            raise KeyError("pair is not a link of the complex")
        return rows


@dataclass(frozen=True)
class ComplexStats:
    kappa0: int
    kappa1: int
    kappa2: int
    beta0: int | None = None
    beta1: int | None = None


def build_clique_complex(g: Graph) -> CliqueComplex:
    """Build the 3-clique complex of a graph.

    Links are the graph edges; every triple of mutually linked nodes becomes
    a filled triangle.  Triangles are found by intersecting the neighbor
    rows of each edge's endpoints, restricted to indices above the edge, so
    the resulting (i, j, k) list is lexicographic by construction.
    """
    edges = g.edges
    if edges.shape[0] == 0:
        return CliqueComplex(g.n_nodes, edges.reshape(0, 2), np.empty((0, 3), dtype=np.int64))
    adj = g.adjacency_matrix()
    common = adj[edges[:, 0]] & adj[edges[:, 1]]
    common &= np.arange(g.n_nodes)[None, :] > edges[:, 1][:, None]
    row, third = np.nonzero(common)
    triangles = np.column_stack([edges[row, 0], edges[row, 1], third])
    return CliqueComplex(g.n_nodes, edges, triangles)


def incidence_1(c: CliqueComplex) -> sparse.csr_array:
    """Signed node-link incidence matrix, shape (kappa1, kappa0).

    Row for link (i, j) holds -1 at column i and +1 at column j.
    """
    m = c.links.shape[0]
    rows = np.repeat(np.arange(m), 2)
    cols = c.links.ravel()
    data = np.tile(np.array([-1.0, 1.0]), m)
    return sparse.csr_array((data, (rows, cols)), shape=(m, c.n_nodes))


def incidence_2(c: CliqueComplex) -> sparse.csr_array:
    """Signed link-triangle incidence matrix, shape (kappa2, kappa1).

    Row for triangle (i, j, k) holds +1 at link (i, j), -1 at link (i, k)
    and +1 at link (j, k).  Composing with ``incidence_1`` gives zero.
    """
    t = c.triangles.shape[0]
    if t == 0:
        return sparse.csr_array((t, c.links.shape[0]))
    faces = np.empty((t, 3, 2), dtype=np.int64)
    faces[:, 0] = c.triangles[:, [0, 1]]
    faces[:, 1] = c.triangles[:, [0, 2]]
    faces[:, 2] = c.triangles[:, [1, 2]]
    cols = c.link_rows(faces.reshape(-1, 2))
    rows = np.repeat(np.arange(t), 3)
    data = np.tile(np.array([1.0, -1.0, 1.0]), t)
    return sparse.csr_array((data, (rows, cols)), shape=(t, c.links.shape[0]))


def complex_stats(c: CliqueComplex, compute_betti: bool = False,
                  size_cap: int = BETTI_SIZE_CAP) -> ComplexStats:
    """Cardinalities of the complex, optionally with Betti numbers.

    beta0 counts connected components, beta1 independent unfilled cycles.
    Betti numbers use dense matrix ranks and are therefore capped to small
    complexes (kappa1 <= size_cap); this is a diagnostic facility, not part
    of the experiment pipeline.
    """
    kappa0, kappa1, kappa2 = c.kappa
    if not compute_betti:
        return ComplexStats(kappa0, kappa1, kappa2)
    if kappa1 > size_cap:
        raise ValueError(f"Betti computation capped at kappa1 <= {size_cap}, got {kappa1}")
    rank1 = int(np.linalg.matrix_rank(incidence_1(c).toarray())) if kappa1 else 0
    rank2 = int(np.linalg.matrix_rank(incidence_2(c).toarray())) if kappa2 else 0
    beta0 = kappa0 - rank1
    beta1 = kappa1 - rank1 - rank2
    return ComplexStats(kappa0, kappa1, kappa2, beta0, beta1)


def n_components(g: Graph) -> int:
    """Number of connected components of a graph."""
    if g.n_nodes == 0:
        return 0
    if g.n_edges == 0:
        return g.n_nodes
    data = np.ones(g.n_edges)
    adj = sparse.csr_array((data, (g.edges[:, 0], g.edges[:, 1])), shape=(g.n_nodes, g.n_nodes))
    count, _ = _graph_components(adj, directed=False)
    return int(count)
