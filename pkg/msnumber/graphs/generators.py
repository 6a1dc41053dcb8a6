"""Graph generators for exhaustive sweeps and seeded random sampling."""

from typing import Iterator

import numpy as np

from msnumber.graphs.graph import Graph


def labeled_graph_count(n: int) -> int:
    return 1 << (n * (n - 1) // 2)


def all_labeled_graphs(n: int) -> Iterator[Graph]:
    """Every labeled graph on n vertices; bit k of the mask is the k-th pair.

    Pairs are ordered (0,1), (0,2), (1,2), (0,3), ... as in graph6.
    """
    j, i = np.tril_indices(n, k=-1)
    shifts = np.arange(i.size, dtype=np.int64)
    for mask in range(labeled_graph_count(n)):
        bits = ((mask >> shifts) & 1).astype(np.uint8)
        dense = np.zeros((n, n), dtype=np.uint8)
        dense[i, j] = bits
        dense |= dense.T
        yield Graph.from_dense(dense)


def random_graph(n: int, rng: np.random.Generator, density: float = 0.5) -> Graph:
    """Erdős–Rényi G(n, p) sample."""
    upper = np.triu((rng.random((n, n)) < density).astype(np.uint8), k=1)
    return Graph.from_dense(upper | upper.T)


def random_tree(n: int, rng: np.random.Generator) -> Graph:
    """Random recursive tree: vertex i attaches to a uniform earlier vertex."""
    edges = [(int(rng.integers(0, i)), i) for i in range(1, n)]
    return Graph.from_edges(n, edges)


def random_bipartite_graph(n: int, rng: np.random.Generator, density: float = 0.5) -> Graph:
    """Random sides, then each cross pair is an edge with probability ``density``."""
    side = rng.integers(0, 2, size=n).astype(bool)
    cross = side[:, np.newaxis] != side[np.newaxis, :]
    upper = np.triu(((rng.random((n, n)) < density) & cross).astype(np.uint8), k=1)
    return Graph.from_dense(upper | upper.T)
