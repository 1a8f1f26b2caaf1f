"""
Consistent / lazy tiebreaking 테스트
"""
import random

import pytest

from models.errors import InvariantViolation, NotBipartite, RepairBudgetExceeded
from models.graph import Graph, PairSet, Path
from models.schemes import PathSystem, SourceTree
from pathfinder.random_graphs import random_bipartite, random_graph, random_pairs
from pathfinder.shortest_paths import enumerate_shortest_paths, single_source_distances
from tiebreaker.consistent import check_consistency, consistent_scheme, perturb_weights
from tiebreaker.lazy import check_lazy, initial_tree, lazy_scheme, make_lazy


class TestPerturbWeights:
    def test_single_edge(self):
        perturbed = perturb_weights(Graph(2, edges=((0, 1),)))
        assert perturbed.edges == ((0, 1, 3),)
        assert perturbed.weighted

    def test_four_cycle_becomes_unique(self, cycle4):
        paths = enumerate_shortest_paths(perturb_weights(cycle4), 0, 2, cap=10)
        assert len(paths) == 1
        assert Path.from_nodes(cycle4, paths[0].nodes).length == 2

    def test_random_graph_unique_and_shortest(self):
        g = random_graph(30, 60, seed=13)
        perturbed = perturb_weights(g)
        for u in range(g.n):
            dist = single_source_distances(g, u)
            for v in range(g.n):
                if u == v:
                    continue
                paths = enumerate_shortest_paths(perturbed, u, v, cap=1)
                assert Path.from_nodes(g, paths[0].nodes).length == dist[v]


class TestConsistentScheme:
    def test_path_graph(self, path_graph):
        system = consistent_scheme(path_graph(4), PairSet(4, ((0, 3),)))
        assert system.path(0, 3).nodes == (0, 1, 2, 3)

    def test_both_directions_share_nodes(self, cycle4):
        system = consistent_scheme(cycle4, PairSet(4, ((0, 2), (2, 0))))
        assert set(system.path(0, 2).nodes) == set(system.path(2, 0).nodes)
        assert system.path(0, 2).nodes == tuple(reversed(system.path(2, 0).nodes))

    def test_random_instance_is_consistent(self):
        g = random_graph(40, 100, seed=21)
        pairs = random_pairs(g, 20, seed=21)
        assert check_consistency(consistent_scheme(g, pairs)) == []

    @pytest.mark.parametrize("seed", range(100))
    def test_generator_outputs_are_consistent(self, seed):
        rng = random.Random(seed)
        n = rng.randint(4, 20)
        g = random_graph(n, rng.randint(n, 3 * n), directed=rng.random() < 0.5,
                         weighted=rng.random() < 0.5, seed=rng)
        # 모든 쌍을 요구해 부분경로 검사가 실제로 일어나게 한다
        pairs = random_pairs(g, n * n, seed=seed)
        system = consistent_scheme(g, pairs)
        assert check_consistency(system) == []
        PathSystem.build(g, system.entries)

    def test_deterministic_across_pair_orderings(self):
        g = random_graph(25, 60, weighted=True, seed=17)
        pairs = random_pairs(g, 30, seed=17)
        forward = consistent_scheme(g, pairs)
        backward = consistent_scheme(g, PairSet(g.n, tuple(reversed(pairs.pairs))))
        assert forward.entries == backward.entries
        assert consistent_scheme(g, pairs).to_dict() == forward.to_dict()


class TestCheckConsistency:
    def test_single_pair(self, path_graph):
        system = PathSystem.build(path_graph(3), {(0, 2): [0, 1, 2]})
        assert check_consistency(system) == []

    def test_corrupted_system_is_flagged(self):
        # 1 -> 3 사이에 길이 2 경로가 두 개 (1-2-3, 1-4-3)
        g = Graph(5, edges=((0, 1), (1, 2), (2, 3), (1, 4), (4, 3)))
        system = PathSystem.unchecked(g, {(0, 3): [0, 1, 2, 3], (1, 3): [1, 4, 3]})
        violations = check_consistency(system)
        assert len(violations) == 1
        assert violations[0].subject == (0, 3, 1, 3)
        assert violations[0].kind == "inconsistent_subpath"

    def test_build_rejects_non_shortest(self, cycle4):
        with pytest.raises(InvariantViolation):
            PathSystem.build(cycle4, {(0, 1): [0, 3, 2, 1]})


def _random_bipartite_instance(seed: int):
    rng = random.Random(seed)
    n = rng.randint(2, 40)
    g = random_bipartite(n, rng.randint(n - 1, 3 * n), seed=rng)
    pairs = random_pairs(g, rng.randint(1, 15), seed=rng)
    return g, pairs


class TestLazyScheme:
    def test_star(self):
        g = Graph(3, edges=((0, 1), (0, 2)))
        trees = lazy_scheme(g, PairSet(3, ((0, 1), (0, 2))))
        assert trees[0].edges == ((0, 1), (0, 2))
        assert trees[0].branching == frozenset({(0, 1), (0, 2)})
        assert check_lazy(trees, g, PairSet(3, ((0, 1), (0, 2)))) == []

    def test_diamond(self, diamond):
        pairs = PairSet(5, ((0, 3), (0, 4)))
        trees = lazy_scheme(diamond, pairs)
        assert trees[0].edges == ((0, 1), (1, 3), (1, 4))
        assert check_lazy(trees, diamond, pairs) == []

    def test_unrepaired_diamond_tree_is_repaired(self, diamond):
        layer = {0: 0, 1: 1, 2: 1, 3: 2, 4: 2}
        start = SourceTree.from_parents(0, {1: 0, 2: 0, 3: 1, 4: 2}, layer)
        repaired = make_lazy(diamond, start, [3, 4])
        assert repaired.edges == ((0, 1), (1, 3), (1, 4))
        assert repaired.repairs == 1

    def test_repair_budget(self, diamond):
        layer = {0: 0, 1: 1, 2: 1, 3: 2, 4: 2}
        start = SourceTree.from_parents(0, {1: 0, 2: 0, 3: 1, 4: 2}, layer)
        with pytest.raises(RepairBudgetExceeded):
            make_lazy(diamond, start, [3, 4], max_repairs=0)

    def test_rejects_odd_cycle(self):
        triangle = Graph(3, edges=((0, 1), (1, 2), (0, 2)))
        with pytest.raises(NotBipartite):
            lazy_scheme(triangle, PairSet(3, ((0, 2),)))

    def test_initial_tree_uses_min_parent(self, diamond):
        tree = initial_tree(diamond, 0, [4])
        assert tree.edges == ((0, 1), (1, 4))

    @pytest.mark.parametrize("seed", range(50))
    def test_random_bipartite_instances(self, seed):
        g, pairs = _random_bipartite_instance(seed)
        trees = lazy_scheme(g, pairs)
        assert check_lazy(trees, g, pairs) == []

        for source, group in pairs.by_source().items():
            tree = trees[source]
            dist = single_source_distances(g, source)
            for _, t in group:
                assert len(tree.path_to(t)) - 1 == dist[t]
            assert len(tree.leaves()) <= len(group)
            assert len(tree.branching) <= 2 * len(group)
            # 경험적 반복 한도
            assert tree.repairs <= g.n * g.n

    @pytest.mark.parametrize("seed", [0, 5, 17])
    def test_deterministic(self, seed):
        first = lazy_scheme(*_random_bipartite_instance(seed))
        again = lazy_scheme(*_random_bipartite_instance(seed))
        assert list(first) == list(again)
        assert [t.to_dict() for t in first.values()] == [t.to_dict() for t in again.values()]


class TestCheckLazy:
    def test_single_edge_tree(self):
        g = Graph(2, edges=((0, 1),))
        pairs = PairSet(2, ((0, 1),))
        assert check_lazy(lazy_scheme(g, pairs), g, pairs) == []

    def test_unrepaired_diamond_tree(self, diamond):
        layer = {0: 0, 1: 1, 2: 1, 3: 2, 4: 2}
        trees = {0: SourceTree.from_parents(0, {1: 0, 2: 0, 3: 1, 4: 2}, layer)}
        violations = check_lazy(trees, diamond, PairSet(5, ((0, 3), (0, 4))))
        assert len(violations) == 1
        assert violations[0].kind == "lazy_crossing"
        assert violations[0].subject == (0, (1, 3), (2, 4))

    def test_missing_tree(self, diamond):
        violations = check_lazy({}, diamond, PairSet(5, ((0, 3),)))
        assert [v.kind for v in violations] == ["missing_tree"]

    def test_tree_that_misses_a_target(self, diamond):
        layer = {0: 0, 1: 1, 3: 2}
        trees = {0: SourceTree.from_parents(0, {1: 0, 3: 1}, layer)}
        violations = check_lazy(trees, diamond, PairSet(5, ((0, 3), (0, 4))))
        assert [v.kind for v in violations] == ["distance_not_preserved"]
