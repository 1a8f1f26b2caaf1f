"""
외부/내부 인스턴스, 층 구조 변환, obstacle product 테스트
"""
import random
from dataclasses import replace

import pytest

from formats.edge_list import dump_instance
from lowerbound.inner import gen_inner, layered_regularize, unique_disjoint_paths, validate_inner
from lowerbound.obstacle import (
    check_path_structure,
    forced_edge_count,
    forced_edges,
    necessity_sweep,
    obstacle_product,
)
from lowerbound.outer import gen_outer, validate_outer
from models.errors import LayerMismatch, NotDisjointSystem, OddDegree, PairCountMismatch, PreconditionFailed
from models.graph import Graph, PairSet
from models.lowerbound import ObstacleInstance, ProductMode
from pathfinder.shortest_paths import enumerate_shortest_paths, shortest_distance


def inner_paths(length: int, layered: bool = False):
    def factory(middle: int, pair_count: int):
        return gen_inner(pair_count, length, layered=layered)
    return factory


class TestGenOuter:
    def test_single_path(self):
        inst = gen_outer(1, 2)
        assert inst.graph.edge_keys() == [(0, 1), (1, 2)]
        assert inst.pairs.pairs == ((0, 2),)
        assert (inst.first, inst.middle, inst.last) == ((0,), (1,), (2,))

    def test_two_middle_nodes(self):
        inst = gen_outer(2, 4)
        assert len(inst.middle) == 2
        assert len(inst.first) + len(inst.last) == 8
        assert len(inst.pairs) == 4
        assert validate_outer(inst) == []

    def test_disjoint_paths(self):
        inst = gen_outer(3, 2)
        assert inst.graph.m == 6
        for s, t in inst.pairs:
            assert shortest_distance(inst.graph, s, t) == 2

    def test_odd_degree(self):
        with pytest.raises(OddDegree):
            gen_outer(2, 3)

    @pytest.mark.parametrize("n_mid,degree", [(1, 2), (2, 6), (4, 4), (3, 8)])
    def test_generator_passes_validator(self, n_mid, degree):
        assert validate_outer(gen_outer(n_mid, degree)) == []


class TestValidateOuter:
    def test_degree_violation(self):
        inst = gen_outer(2, 2)
        # middle 노드 3에 첫 층 노드 0을 더 붙인다
        bad = replace(inst, graph=inst.graph.with_edges([(0, 3)]))
        kinds = {v.kind for v in validate_outer(bad)}
        assert "middle_degree" in kinds

    def test_shared_edge(self):
        inst = gen_outer(1, 4)
        bad = replace(inst, pairs=PairSet(inst.graph.n, inst.pairs.pairs + ((0, 4),)))
        violations = validate_outer(bad)
        assert ("edge_usage", (0, 2)) in {(v.kind, v.subject) for v in violations}


class TestGenInner:
    def test_single_path(self):
        inst = gen_inner(1, 2)
        assert inst.graph.edge_keys() == [(0, 1), (1, 2)]
        assert inst.pairs.pairs == ((0, 2),)
        assert not inst.layered

    def test_layered(self):
        inst = gen_inner(3, 4, layered=True)
        assert inst.ell == 5
        for s, t in inst.pairs:
            assert shortest_distance(inst.graph, s, t) == 4
        assert validate_inner(inst) == []

    @pytest.mark.parametrize("pair_count,length", [(1, 1), (2, 3), (5, 2), (4, 6)])
    def test_unique_edge_disjoint(self, pair_count, length):
        inst = gen_inner(pair_count, length)
        paths = unique_disjoint_paths(inst.graph, inst.pairs)
        for (s, t), path in paths.items():
            assert len(enumerate_shortest_paths(inst.graph, s, t)) == 1
            assert path.hops == length
        assert validate_inner(inst) == []


class TestUniqueDisjointPaths:
    def test_ambiguous_pair(self, cycle4):
        with pytest.raises(NotDisjointSystem):
            unique_disjoint_paths(cycle4, PairSet(4, ((0, 2),)))

    def test_shared_edge(self, path_graph):
        with pytest.raises(NotDisjointSystem):
            unique_disjoint_paths(path_graph(3), PairSet(3, ((0, 2), (1, 2))))

    def test_stray_edge(self, path_graph):
        with pytest.raises(NotDisjointSystem):
            unique_disjoint_paths(path_graph(3), PairSet(3, ((0, 1),)))


def _random_disjoint_system(seed: int):
    """정점 서로소 경로 몇 개 + 한 정점에서 교차하는 경로 한 쌍"""
    rng = random.Random(seed)
    edges, pairs = [], []
    node = 0
    for _ in range(rng.randint(1, 5)):
        length = rng.randint(1, 7)
        edges.extend((node + k, node + k + 1) for k in range(length))
        pairs.append((node, node + length))
        node += length + 1
    if rng.random() < 0.5:
        # a - hub - b, c - hub - d
        hub = node
        a, b, c, d = node + 1, node + 2, node + 3, node + 4
        edges.extend([(a, hub), (hub, b), (c, hub), (hub, d)])
        pairs.extend([(a, b), (c, d)])
        node += 5
    return Graph(node, edges=tuple(edges)), PairSet(node, tuple(pairs))


class TestLayeredRegularize:
    def test_path_of_five(self, path_graph):
        out = layered_regularize(path_graph(6), PairSet(6, ((0, 5),)))
        assert out.ell == 3
        # (층, 원래 노드) 순 번호: (0,v0) (0,v2) (1,v1) (1,v3) (2,v2) (2,v4)
        assert out.pairs.pairs == ((0, 4), (1, 5))
        assert out.graph.m == 4
        for s, t in out.pairs:
            assert shortest_distance(out.graph, s, t) == 2
        assert validate_inner(out) == []

    def test_single_pair_at_distance_two(self, path_graph):
        out = layered_regularize(path_graph(3), PairSet(3, ((0, 2),)))
        assert out.ell == 2
        assert len(out.pairs) == 2
        assert out.graph.m == 2
        assert validate_inner(out) == []

    def test_three_paths_of_four(self):
        inner = gen_inner(3, 4)
        out = layered_regularize(inner.graph, inner.pairs)
        assert len(out.pairs) == 6
        assert out.ell == 3
        assert set(out.path_lengths.values()) == {2}
        assert validate_inner(out) == []

    def test_short_average_raises_segment_to_one(self):
        inner = gen_inner(2, 1)
        out = layered_regularize(inner.graph, inner.pairs)
        assert out.ell == 2
        assert len(out.pairs) == 2

    def test_precondition(self, cycle4):
        with pytest.raises(NotDisjointSystem):
            layered_regularize(cycle4, PairSet(4, ((0, 2),)))

    @pytest.mark.parametrize("seed", [1, 4, 9])
    def test_deterministic(self, seed):
        first = layered_regularize(*_random_disjoint_system(seed))
        again = layered_regularize(*_random_disjoint_system(seed))
        assert first.to_dict() == again.to_dict()

    @pytest.mark.parametrize("seed", range(50))
    def test_random_systems(self, seed):
        graph, pairs = _random_disjoint_system(seed)
        out = layered_regularize(graph, pairs)
        assert validate_inner(out) == []
        for s, t in out.pairs:
            assert out.layers[s] == 0
            assert out.layers[t] == out.ell - 1
            assert len(enumerate_shortest_paths(out.graph, s, t)) == 1
            assert shortest_distance(out.graph, s, t) == out.ell - 1


class TestObstacleProduct:
    def test_weighted_scaling(self):
        inst = obstacle_product(gen_outer(1, 2), inner_paths(2), ProductMode.WEIGHTED)
        assert inst.scale == 4
        (c, z), = inst.demanded
        assert shortest_distance(inst.graph, c, z) == 10
        assert len(enumerate_shortest_paths(inst.graph, c, z)) == 1
        assert check_path_structure(inst) == []

    def test_unweighted_single_edge_inner(self):
        inst = obstacle_product(gen_outer(1, 2), inner_paths(1, layered=True), "unweighted")
        (c, z), = inst.demanded
        _, (q, r) = inst.route(c, z)
        paths = enumerate_shortest_paths(inst.graph, c, z)
        assert [p.nodes for p in paths] == [(c, q, r, z)]
        assert paths[0].length == 3
        assert not inst.graph.weighted

    def test_unweighted_two_middle_nodes(self):
        inst = obstacle_product(gen_outer(2, 4), inner_paths(3, layered=True), ProductMode.UNWEIGHTED)
        assert len(inst.demanded) == 4
        assert check_path_structure(inst) == []

    def test_negative_control(self):
        inst = obstacle_product(gen_outer(1, 2), inner_paths(2), ProductMode.WEIGHTED, scale=1)
        (c, z), = inst.demanded
        _, (q, r) = inst.route(c, z)
        detour = replace(inst, graph=inst.graph.with_edges([(c, r, 1)]))
        violations = check_path_structure(detour)
        assert violations
        assert {v.kind for v in violations} == {"nonconforming_path"}
        with pytest.raises(PreconditionFailed):
            forced_edge_count(detour)

    def test_pair_count_mismatch(self):
        def factory(middle, pair_count):
            return gen_inner(pair_count + 1, 2)

        with pytest.raises(PairCountMismatch):
            obstacle_product(gen_outer(1, 2), factory)

    def test_unweighted_needs_layers(self):
        with pytest.raises(LayerMismatch):
            obstacle_product(gen_outer(1, 2), inner_paths(2), ProductMode.UNWEIGHTED)

    def test_unweighted_needs_equal_layer_counts(self):
        outer = gen_outer(2, 2)

        def factory(middle, pair_count):
            return gen_inner(pair_count, 2 if middle == outer.middle[0] else 3, layered=True)

        with pytest.raises(LayerMismatch):
            obstacle_product(outer, factory, ProductMode.UNWEIGHTED)

    def test_node_count_breakdown(self):
        inst = obstacle_product(gen_outer(2, 4), inner_paths(3))
        first, last, inner_nodes = inst.node_count_breakdown()
        assert (first, last, inner_nodes) == (4, 4, 16)
        assert inst.graph.n == 24
        assert len(inst.subset) == 8

    def test_correspondence_covers_inner_pairs_once(self):
        inst = obstacle_product(gen_outer(3, 6), inner_paths(2))
        for rep in inst.replacements:
            inner_pairs = [(q - rep.offset, r - rep.offset) for _, (q, r) in rep.correspondence]
            assert sorted(inner_pairs) == sorted(rep.inner.pairs.pairs)
        outer_pairs = [outer for rep in inst.replacements for outer, _ in rep.correspondence]
        assert sorted(outer_pairs) == sorted(inst.demanded.pairs)

    def test_dict_round_trip(self):
        inst = obstacle_product(gen_outer(2, 4), inner_paths(3, layered=True), ProductMode.UNWEIGHTED)
        again = ObstacleInstance.from_dict(inst.to_dict())
        assert again.graph == inst.graph
        assert again.demanded == inst.demanded
        assert again.mode is ProductMode.UNWEIGHTED
        assert check_path_structure(again) == []

    @pytest.mark.parametrize("mode", list(ProductMode))
    @pytest.mark.parametrize("length", [1, 2, 3, 4])
    @pytest.mark.parametrize("degree", [2, 4, 6])
    @pytest.mark.parametrize("n_mid", [1, 2, 3, 4])
    def test_path_structure_holds(self, n_mid, degree, length, mode):
        layered = mode is ProductMode.UNWEIGHTED
        inst = obstacle_product(gen_outer(n_mid, degree), inner_paths(length, layered=layered), mode)
        assert check_path_structure(inst, cap=10000) == []

    @pytest.mark.parametrize("mode", list(ProductMode))
    def test_deterministic(self, mode):
        layered = mode is ProductMode.UNWEIGHTED
        first = obstacle_product(gen_outer(3, 4), inner_paths(2, layered=layered), mode)
        again = obstacle_product(gen_outer(3, 4), inner_paths(2, layered=layered), mode)
        assert dump_instance(first) == dump_instance(again)

    def test_long_inner_paths(self):
        inst = obstacle_product(gen_outer(1, 2), inner_paths(1200), ProductMode.WEIGHTED)
        assert inst.scale == 2400
        assert check_path_structure(inst) == []
        assert forced_edge_count(inst) == 1202

    def test_layered_regularized_inner(self):
        graph, pairs = _random_disjoint_system(3)
        regular = layered_regularize(graph, pairs)
        outer = gen_outer(1, 2 * len(regular.pairs))
        inst = obstacle_product(outer, lambda middle, k: regular, ProductMode.UNWEIGHTED)
        assert check_path_structure(inst) == []


class TestForcedEdges:
    def test_single_middle(self):
        inst = obstacle_product(gen_outer(1, 2), inner_paths(2))
        assert forced_edge_count(inst) == 4
        assert necessity_sweep(inst) == []

    @pytest.mark.parametrize("mode", list(ProductMode))
    def test_two_middle_nodes(self, mode):
        layered = mode is ProductMode.UNWEIGHTED
        inst = obstacle_product(gen_outer(2, 4), inner_paths(3, layered=layered), mode)
        assert forced_edge_count(inst) == 20
        assert necessity_sweep(inst) == []

    def test_sweep_reports_removable_edges(self):
        inst = obstacle_product(gen_outer(1, 2), inner_paths(2))
        extra = (0, 3)  # c -> 내부 가운데 노드, 무거워서 최단경로에 쓰이지 않는다
        heavy = replace(inst, graph=inst.graph.with_edges([(0, 3, 100)]))
        assert necessity_sweep(heavy, forced_edges(heavy) | {extra}) == [extra]
