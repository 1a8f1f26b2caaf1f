"""
Consistent Tiebreaking - 결정적 가중치 섭동으로 최단경로를 유일하게 만든다
"""
import logging
from typing import Dict, List

from models.errors import Disconnected
from models.graph import UNREACHABLE, Graph, PairSet, Path
from models.report import Violation
from models.schemes import PathSystem
from pathfinder.shortest_paths import path_between, shortest_path_tree

logger = logging.getLogger(__name__)


def perturb_weights(graph: Graph) -> Graph:
    """
    G* 생성: i번째 간선의 가중치를 w(e)·2^m + 2^i 로 바꾼다 (m = 간선 수)

    서로 다른 단순 경로는 간선 집합이 달라 2^i 합이 달라지고, 그 합은 2^m 미만이라
    원래 가중치 순서를 뒤집지 못한다. 따라서 G*의 최단경로는 유일하며 G의 최단경로다.
    """
    m = graph.m
    weights = [(w << m) + (1 << i) for i, (_, _, w) in enumerate(graph.edges)]
    return graph.reweighted(weights)


def consistent_scheme(graph: Graph, pairs: PairSet) -> PathSystem:
    """
    요구 쌍마다 G*의 유일한 최단경로를 저장한 일관(consistent) 경로 시스템

    Raises:
        Disconnected: 연결되지 않은 쌍이 있을 때
    """
    perturbed = perturb_weights(graph)
    entries: Dict[tuple, Path] = {}

    for source, group in pairs.by_source().items():
        dist, parent = shortest_path_tree(perturbed, source)
        for s, t in group:
            if dist[t] is UNREACHABLE:
                raise Disconnected((s, t))
            nodes = path_between(parent, s, t)
            entries[(s, t)] = Path.from_nodes(graph, nodes)

    logger.debug("consistent scheme: %d path(s) over %d source(s)", len(entries), len(pairs.sources()))
    return PathSystem(graph, entries)


def check_consistency(system: PathSystem) -> List[Violation]:
    """
    저장된 π(w, z) 위의 x, y (x가 앞) 가 다시 저장된 쌍이면
    π(w, z)의 x..y 구간이 π(x, y)와 같아야 한다.

    Returns:
        위반 목록, subject = (w, z, x, y)
    """
    violations: List[Violation] = []
    for (w, z), path in system.entries.items():
        for x, y in path.ordered_node_pairs():
            other = system.entries.get((x, y))
            if other is None or (x, y) == (w, z):
                continue
            segment = path.segment(x, y)
            if segment != other.nodes:
                violations.append(Violation(
                    kind="inconsistent_subpath",
                    subject=(w, z, x, y),
                    detail=f"segment {list(segment)} of pi({w},{z}) differs from pi({x},{y}) = {list(other.nodes)}",
                ))
    return violations
