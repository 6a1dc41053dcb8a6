"""Closed-form MS-numbers for graph families and the disjoint-union recursion.

These evaluators use binomial sums and powers of two only; they never call
the readonce reduction, so comparing the two is a genuine cross-check.
"""

import logging
from math import comb
from typing import Sequence, Tuple

from msnumber.config.schema import Family, FamilySpec
from msnumber.errors import DomainError
from msnumber.graphs.graph import Graph, disjoint_union, make_empty, tree_vertex_cover_number

logger = logging.getLogger(__name__)


def _require(condition: bool, message: str):
    if not condition:
        raise DomainError(message)


def w_complete(n: int) -> int:
    """w(K_n) = Σ_i C(n+1, 4i+3)."""
    _require(n >= 1, f"K_n needs n >= 1, got {n}")
    return sum(comb(n + 1, 4 * i + 3) for i in range((n - 1) // 4 + 1))


def w_complete_by_sizes(n: int) -> int:
    """Count of vertex subsets inducing a clique with an odd number of edges.

    C(k, 2) is odd exactly for k ≡ 2, 3 (mod 4).
    """
    _require(n >= 1, f"K_n needs n >= 1, got {n}")
    return sum(comb(n, k) for k in range(n + 1) if k % 4 in (2, 3))


def w_path(n: int) -> int:
    _require(n >= 1, f"P_n needs n >= 1, got {n}")
    if n % 2:
        return (1 << (n - 1)) - (1 << ((n - 1) // 2))
    return (1 << (n - 1)) - (1 << ((n - 2) // 2))


def w_cycle(n: int) -> int:
    _require(n >= 3, f"C_n needs n >= 3, got {n}")
    if n % 2:
        return 1 << (n - 1)
    return (1 << (n - 1)) - (1 << (n // 2))


def w_star(n: int) -> int:
    _require(n >= 2, f"S_n needs n >= 2, got {n}")
    return 1 << (n - 2)


def w_complete_bipartite(p: int, q: int) -> int:
    _require(p >= 1 and q >= 1, f"K_(p,q) needs p, q >= 1, got ({p}, {q})")
    return 1 << (p + q - 2)


def w_qmax(n: int) -> int:
    """w(K_4 ∪ K̄_{n-4}), the largest MS-number of order n >= 4."""
    _require(n >= 4, f"Q_n needs n >= 4, got {n}")
    return (1 << (n - 1)) + (1 << (n - 3))


def w_tree(tree: Graph) -> int:
    """2^{n-1}(1 - 2^{-τ}) with τ the vertex covering number."""
    tau = tree_vertex_cover_number(tree)
    return (1 << (tree.n - 1)) - (1 << (tree.n - 1 - tau))


def union_weight(w1: int, n1: int, w2: int, n2: int) -> int:
    """w(G1 ∪ G2) = w(G1)·w̄(G2) + w̄(G1)·w(G2)."""
    _require(n1 >= 0 and n2 >= 0, "Orders must be non-negative")
    _require(0 <= w1 <= (1 << n1), f"w1={w1} outside 0..2^{n1}")
    _require(0 <= w2 <= (1 << n2), f"w2={w2} outside 0..2^{n2}")
    return w1 * ((1 << n2) - w2) + ((1 << n1) - w1) * w2


def union_weight_many(parts: Sequence[Tuple[int, int]]) -> int:
    """Fold the two-part rule over (w_i, n_i) pairs from the right."""
    w, n = 0, 0
    for wi, ni in reversed(list(parts)):
        w = union_weight(wi, ni, w, n)
        n += ni
    return w


def make_complete(n: int) -> Graph:
    return Graph.from_edges(n, ((u, v) for v in range(n) for u in range(v)))


def make_path(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def make_cycle(n: int) -> Graph:
    _require(n >= 3, f"C_n needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def make_star(n: int) -> Graph:
    """Centre 0 joined to 1..n-1."""
    return Graph.from_edges(n, ((0, i) for i in range(1, n)))


def make_complete_bipartite(p: int, q: int) -> Graph:
    return Graph.from_edges(p + q, ((i, p + j) for i in range(p) for j in range(q)))


def make_qn(n: int) -> Graph:
    _require(n >= 4, f"Q_n needs n >= 4, got {n}")
    return disjoint_union(make_complete(4), make_empty(n - 4))


def evaluate_family(spec: FamilySpec) -> int:
    """Closed-form MS-number for a family member."""
    family = spec.family
    if family == Family.COMPLETE:
        return w_complete(spec.n)
    if family == Family.PATH:
        return w_path(spec.n)
    if family == Family.CYCLE:
        return w_cycle(spec.n)
    if family == Family.STAR:
        return w_star(spec.n)
    if family == Family.COMPLETE_BIPARTITE:
        return w_complete_bipartite(spec.p, spec.q)
    if family == Family.QMAX:
        return w_qmax(spec.n)
    return w_tree(spec.tree)


def build_family(spec: FamilySpec) -> Graph:
    """The graph a FamilySpec names."""
    family = spec.family
    if family == Family.COMPLETE:
        return make_complete(spec.n)
    if family == Family.PATH:
        return make_path(spec.n)
    if family == Family.CYCLE:
        return make_cycle(spec.n)
    if family == Family.STAR:
        return make_star(spec.n)
    if family == Family.COMPLETE_BIPARTITE:
        return make_complete_bipartite(spec.p, spec.q)
    if family == Family.QMAX:
        return make_qn(spec.n)
    return spec.tree
