import pytest

from msnumber.config.schema import Family, FamilySpec
from msnumber.errors import DomainError
from msnumber.graphs.generators import random_graph, random_tree
from msnumber.graphs.graph import disjoint_union, make_empty
from msnumber.states.closedforms import (
    build_family,
    evaluate_family,
    make_complete,
    make_complete_bipartite,
    make_cycle,
    make_path,
    make_qn,
    make_star,
    union_weight,
    union_weight_many,
    w_complete,
    w_complete_by_sizes,
    w_complete_bipartite,
    w_cycle,
    w_path,
    w_qmax,
    w_star,
    w_tree,
)
from msnumber.states.graphstate import ms_number


class TestFormulaValues:

    def test_complete(self):
        assert [w_complete(n) for n in (1, 3, 4)] == [0, 4, 10]

    def test_path(self):
        assert [w_path(n) for n in (2, 4, 5)] == [1, 6, 12]

    def test_cycle(self):
        assert [w_cycle(n) for n in (3, 4, 5)] == [4, 4, 16]

    def test_star(self):
        assert [w_star(n) for n in (2, 3, 5)] == [1, 2, 8]
        assert w_star(3) == w_path(3)

    def test_complete_bipartite(self):
        assert w_complete_bipartite(1, 1) == 1
        assert w_complete_bipartite(2, 2) == 4
        assert all(w_complete_bipartite(1, n - 1) == w_star(n) for n in range(2, 20))

    def test_qmax(self):
        assert [w_qmax(n) for n in (4, 5, 6)] == [10, 20, 40]
        assert w_qmax(4) == w_complete(4)

    def test_tree(self):
        assert w_tree(make_path(2)) == 1
        assert w_tree(make_star(5)) == 8
        assert w_tree(make_path(5)) == 12

    @pytest.mark.parametrize("call", [
        lambda: w_complete(0),
        lambda: w_path(0),
        lambda: w_cycle(2),
        lambda: w_star(1),
        lambda: w_complete_bipartite(0, 3),
        lambda: w_qmax(3),
        lambda: w_tree(make_cycle(4)),
    ])
    def test_out_of_range(self, call):
        with pytest.raises(DomainError):
            call()

    def test_complete_by_subset_sizes(self):
        for n in range(1, 200):
            assert w_complete(n) == w_complete_by_sizes(n)

    def test_complete_is_even_from_three(self):
        assert all(w_complete(n) % 2 == 0 for n in range(3, 300))


class TestAgainstReduction:

    def test_complete(self):
        for n in range(1, 65):
            assert w_complete(n) == ms_number(make_complete(n))

    def test_path(self):
        for n in range(1, 65):
            assert w_path(n) == ms_number(make_path(n))

    def test_cycle(self):
        for n in range(3, 65):
            assert w_cycle(n) == ms_number(make_cycle(n))

    def test_star(self):
        for n in range(2, 65):
            assert w_star(n) == ms_number(make_star(n))

    def test_complete_bipartite(self):
        for p in range(1, 16):
            for q in range(1, 17 - p):
                assert w_complete_bipartite(p, q) == ms_number(make_complete_bipartite(p, q))

    def test_qmax(self):
        for n in range(4, 65):
            assert w_qmax(n) == ms_number(make_qn(n))

    def test_random_trees(self, rng):
        for _ in range(300):
            tree = random_tree(int(rng.integers(1, 60)), rng)
            assert w_tree(tree) == ms_number(tree)


class TestUnion:

    def test_examples(self):
        assert union_weight(4, 3, 1, 2) == 16
        assert union_weight(0, 3, 1, 2) == 8
        assert union_weight(5, 4, 0, 0) == 5

    def test_range_checked(self):
        with pytest.raises(DomainError):
            union_weight(9, 3, 0, 1)
        with pytest.raises(DomainError):
            union_weight(1, 2, -1, 2)

    def test_triangle_and_edge(self):
        g = disjoint_union(make_complete(3), make_path(2))
        assert ms_number(g) == union_weight(4, 3, 1, 2) == 16

    def test_empty_part_scales(self):
        g = disjoint_union(make_empty(3), make_path(2))
        assert ms_number(g) == 8

    def test_random_pairs(self, rng):
        for _ in range(1000):
            n1 = int(rng.integers(0, 9))
            n2 = int(rng.integers(0, 9))
            g1 = random_graph(n1, rng, density=float(rng.random()))
            g2 = random_graph(n2, rng, density=float(rng.random()))
            expected = ms_number(disjoint_union(g1, g2))
            assert union_weight(ms_number(g1), n1, ms_number(g2), n2) == expected

    def test_random_multi_part_unions(self, rng):
        for _ in range(100):
            parts = [random_graph(int(rng.integers(0, 5)), rng) for _ in range(int(rng.integers(3, 5)))]
            union = parts[0]
            for part in parts[1:]:
                union = disjoint_union(union, part)
            assert union_weight_many([(ms_number(p), p.n) for p in parts]) == ms_number(union)

    def test_many_of_nothing(self):
        assert union_weight_many([]) == 0


class TestParityAndBounds:

    def test_only_single_edge_is_odd(self, labeled_weights):
        for n, pairs in labeled_weights.items():
            for g, w in pairs:
                if w % 2:
                    assert n == 2 and g.size == 1

    def test_weight_at_least_edge_count(self, labeled_weights):
        for pairs in labeled_weights.values():
            assert all(w >= g.size for g, w in pairs)

    def test_nonempty_graphs_reach_a_quarter(self, labeled_weights):
        for n, pairs in labeled_weights.items():
            if n < 2:
                continue
            assert all(w >= 1 << (n - 2) for g, w in pairs if not g.is_empty())

    def test_qmax_is_the_maximum(self, labeled_weights):
        for n in (4, 5, 6):
            best = max(w for _, w in labeled_weights[n])
            assert best == w_qmax(n)
            assert ms_number(make_qn(n)) == best


class TestFamilySpec:

    def test_dispatch(self):
        assert evaluate_family(FamilySpec(family=Family.COMPLETE, n=3)) == 4
        assert evaluate_family(FamilySpec(family=Family.COMPLETE_BIPARTITE, p=2, q=3)) == 8
        tree = make_path(5)
        assert evaluate_family(FamilySpec(family=Family.TREE, tree=tree)) == 12

    def test_build_matches_evaluate(self):
        specs = [
            FamilySpec(family=Family.COMPLETE, n=7),
            FamilySpec(family=Family.PATH, n=9),
            FamilySpec(family=Family.CYCLE, n=8),
            FamilySpec(family=Family.STAR, n=6),
            FamilySpec(family=Family.COMPLETE_BIPARTITE, p=3, q=5),
            FamilySpec(family=Family.QMAX, n=9),
        ]
        for spec in specs:
            assert evaluate_family(spec) == ms_number(build_family(spec))

    def test_missing_parameters(self):
        with pytest.raises(ValueError):
            FamilySpec(family=Family.COMPLETE_BIPARTITE, p=2)
        with pytest.raises(ValueError):
            FamilySpec(family=Family.PATH)
        with pytest.raises(ValueError):
            FamilySpec(family=Family.TREE)
