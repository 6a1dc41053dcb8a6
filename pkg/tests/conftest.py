"""Shared fixtures: named graphs, exhaustive labeled sweeps and the graph atlas."""

from typing import Dict, List, Tuple

import networkx as nx
import numpy as np
import pytest
from hypothesis import strategies as st

from msnumber.graphs.generators import all_labeled_graphs
from msnumber.graphs.graph import Graph
from msnumber.states.graphstate import ms_number


def graph_from_nx(g: nx.Graph) -> Graph:
    mapping = {v: i for i, v in enumerate(sorted(g.nodes()))}
    return Graph.from_edges(len(mapping), ((mapping[u], mapping[v]) for u, v in g.edges()))


def graph_h() -> Graph:
    """K4 minus the edge {0, 1}."""
    return Graph.from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 8) -> Graph:
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(u, v) for v in range(n) for u in range(v)]
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, (p for p, keep in zip(pairs, bits) if keep))


@pytest.fixture
def h_graph() -> Graph:
    return graph_h()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(2009)


@pytest.fixture(scope="session")
def labeled_weights() -> Dict[int, List[Tuple[Graph, int]]]:
    """Every labeled graph of order 1..6 with its MS-number."""
    return {n: [(g, ms_number(g)) for g in all_labeled_graphs(n)] for n in range(1, 7)}


@pytest.fixture(scope="session")
def atlas() -> List[Graph]:
    """One graph per isomorphism class for orders 1..7."""
    return [graph_from_nx(g) for g in nx.graph_atlas_g() if g.number_of_nodes() >= 1]


@pytest.fixture(scope="session")
def bipartite_atlas(atlas) -> List[Graph]:
    return [g for g in atlas if g.is_bipartite()]
