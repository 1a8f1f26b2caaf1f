"""
Preserver Verification - 요구 쌍의 거리 보존 여부 검사
"""
from typing import Iterable, List

from models.errors import ShapeMismatch
from models.graph import UNREACHABLE, Distance, Graph, PairSet
from models.report import Violation
from pathfinder.shortest_paths import single_source_distances


def _fmt(distance: Distance) -> str:
    return "unreachable" if distance is UNREACHABLE else str(distance)


def verify_preserver(graph: Graph, sub: Graph, pairs: PairSet) -> List[Violation]:
    """
    dist_H ≠ dist_G 인 쌍과 G에 없는 H의 간선을 모두 보고

    Returns:
        빈 목록이면 유효한 보존자
    """
    if sub.n != graph.n:
        raise ShapeMismatch(f"subgraph has {sub.n} nodes, host has {graph.n}")

    violations: List[Violation] = []
    for u, v, w in sub.edges:
        if graph.weight(u, v) != w:
            violations.append(Violation("foreign_edge", (u, v), f"edge ({u}, {v}, w={w}) is not in the host"))

    for source, group in pairs.by_source().items():
        host_dist = single_source_distances(graph, source)
        sub_dist = single_source_distances(sub, source)
        for s, t in group:
            if host_dist[t] != sub_dist[t]:
                violations.append(Violation(
                    "distance_mismatch",
                    (s, t),
                    f"dist_H = {_fmt(sub_dist[t])}, dist_G = {_fmt(host_dist[t])}",
                ))
    return violations


def verify_subset_preserver(graph: Graph, sub: Graph, nodes: Iterable[int]) -> List[Violation]:
    """S × S 전체를 요구 쌍으로 하는 부분집합 보존자 검사"""
    return verify_preserver(graph, sub, PairSet.subset_pairs(graph.n, nodes))
