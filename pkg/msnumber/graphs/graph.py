"""Simple undirected graphs on bit-packed adjacency rows and their transforms."""

import logging
from collections import deque
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from msnumber.algebra.gf2core import WORD_DTYPE, BitMatrix, column_bits
from msnumber.config.schema import Bipartition
from msnumber.errors import DomainError

logger = logging.getLogger(__name__)

_ONE = np.uint64(1)


class Graph:
    """Labeled simple graph on vertices 0..n-1.

    The adjacency matrix is symmetric with a zero diagonal; instances are
    immutable and every transform returns a new graph.
    """

    __slots__ = ("_adj",)

    def __init__(self, adjacency: BitMatrix):
        if not adjacency.is_square():
            raise DomainError(f"Adjacency matrix must be square, got {adjacency.rows}x{adjacency.cols}")
        if not adjacency.has_zero_diagonal():
            raise DomainError("Graphs have no loops: adjacency diagonal must be zero")
        if not adjacency.is_symmetric():
            raise DomainError("Adjacency matrix of an undirected graph must be symmetric")
        self._adj = adjacency

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        """Graph on n vertices with the given edges; repeated edges are idempotent."""
        if n < 0:
            raise DomainError(f"Vertex count must be non-negative, got {n}")
        dense = np.zeros((n, n), dtype=np.uint8)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"Edge ({u}, {v}) has a vertex outside 0..{n - 1}")
            if u == v:
                raise DomainError(f"Loop at vertex {u} is not allowed")
            dense[u, v] = dense[v, u] = 1
        return cls(BitMatrix.from_array(dense))

    @classmethod
    def from_dense(cls, dense) -> "Graph":
        return cls(BitMatrix.from_array(dense))

    @property
    def n(self) -> int:
        return self._adj.rows

    @property
    def adjacency(self) -> BitMatrix:
        return self._adj

    def edges(self) -> List[Tuple[int, int]]:
        """Edges (u, v) with u < v in lexicographic order."""
        dense = np.triu(self._adj.to_array(), k=1)
        return [(int(u), int(v)) for u, v in np.argwhere(dense)]

    @property
    def size(self) -> int:
        return int(self._adj.to_array().sum()) // 2

    def _check_vertex(self, v: int):
        if not 0 <= v < self.n:
            raise DomainError(f"Vertex {v} outside 0..{self.n - 1}")

    def neighbors(self, v: int) -> List[int]:
        self._check_vertex(v)
        return self._adj.row(v).indices()

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self._adj.row(v).weight()

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self._adj.get(u, v))

    def is_empty(self) -> bool:
        return not self._adj.words.any()

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(_component(self, 0)) == self.n

    def is_tree(self) -> bool:
        return self.n >= 1 and self.size == self.n - 1 and self.is_connected()

    def is_bipartite(self) -> bool:
        return bipartition(self) is not None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        return hash(self._adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def make_empty(n: int) -> Graph:
    """Edgeless graph on n vertices."""
    return Graph(BitMatrix.zeros(n, n))


def _component(graph: Graph, start: int) -> List[int]:
    seen = {start}
    queue = deque([start])
    order = []
    while queue:
        v = queue.popleft()
        order.append(v)
        for w in graph.neighbors(v):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return order


def induced_subgraph(graph: Graph, vertices: Iterable[int]) -> Graph:
    """G[S], relabeled so the kept vertices appear in increasing order."""
    keep = sorted(set(vertices))
    for v in keep:
        graph._check_vertex(v)
    return Graph(graph.adjacency.select(keep, keep))


def bipartition(graph: Graph) -> Optional[Bipartition]:
    """BFS 2-colouring per component; None when an odd cycle exists."""
    colour = [-1] * graph.n
    for root in range(graph.n):
        if colour[root] >= 0:
            continue
        colour[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in graph.neighbors(v):
                if colour[w] < 0:
                    colour[w] = colour[v] ^ 1
                    queue.append(w)
                elif colour[w] == colour[v]:
                    return None
    side_a = tuple(v for v in range(graph.n) if colour[v] == 0)
    side_b = tuple(v for v in range(graph.n) if colour[v] == 1)
    return Bipartition.model_validate({"side_a": side_a, "side_b": side_b}, context={"graph": graph})


def disjoint_union(first: Graph, second: Graph) -> Graph:
    """G1 ∪ G2 with the vertices of G2 shifted by n1."""
    n1, n2 = first.n, second.n
    dense = np.zeros((n1 + n2, n1 + n2), dtype=np.uint8)
    dense[:n1, :n1] = first.adjacency.to_array()
    dense[n1:, n1:] = second.adjacency.to_array()
    return Graph.from_dense(dense)


def local_complement(graph: Graph, v: int) -> Graph:
    """G^v: toggle every edge between two neighbours of v."""
    graph._check_vertex(v)
    words = graph.adjacency.words.copy()
    row = words[v].copy()
    nbrs = np.flatnonzero(column_bits(words, v))
    if nbrs.size:
        words[nbrs] ^= row
        # each neighbour just toggled its own diagonal bit
        words[nbrs, nbrs >> 6] ^= _ONE << (nbrs & 63).astype(WORD_DTYPE)
    return Graph(BitMatrix(graph.n, graph.n, words))


def pivot(graph: Graph, u: int, v: int) -> Graph:
    """G^(uv) = ((G^u)^v)^u, defined on edges only."""
    if not graph.has_edge(u, v):
        raise DomainError(f"Pivot needs an edge, ({u}, {v}) is not one")
    return local_complement(local_complement(local_complement(graph, u), v), u)


def pivot_minor_delete(graph: Graph, u: int, v: int) -> Graph:
    """Pivot on {u, v}, then delete both endpoints."""
    pivoted = pivot(graph, u, v)
    return induced_subgraph(pivoted, (w for w in range(graph.n) if w not in (u, v)))


def tree_vertex_cover_number(graph: Graph) -> int:
    """Minimum vertex cover of a tree by include/exclude dynamic programming."""
    if not graph.is_tree():
        raise DomainError("Vertex cover dynamic programming needs a tree")
    order = _component(graph, 0)
    parent = [-1] * graph.n
    for v in order:
        for w in graph.neighbors(v):
            if w != parent[v] and parent[w] < 0 and w != 0:
                parent[w] = v
    take = [1] * graph.n
    skip = [0] * graph.n
    for v in reversed(order):
        p = parent[v]
        if p >= 0:
            take[p] += min(take[v], skip[v])
            skip[p] += take[v]
    return min(take[0], skip[0])


def relabel(graph: Graph, permutation: Sequence[int]) -> Graph:
    """Graph whose vertex permutation[i] plays the role of vertex i."""
    perm = list(permutation)
    if sorted(perm) != list(range(graph.n)):
        raise DomainError("Relabeling needs a permutation of all vertices")
    return Graph(graph.adjacency.select(perm, perm))
