"""
Outer Instance - 3층 외부 그래프 생성과 구조 검증

세 가지 성질:
1. 모든 middle 노드의 차수가 같은 짝수 D
2. 모든 쌍이 정확히 두 간선짜리 유일한 최단경로를 가진다
3. 모든 간선이 정확히 한 쌍의 최단경로 위에 있다
"""
import logging
from typing import Dict, List

from models.errors import CapExceeded, Disconnected, InvariantViolation, OddDegree
from models.graph import Graph, Pair, PairSet, normalize_edge
from models.lowerbound import OuterInstance
from models.report import Violation
from pathfinder.shortest_paths import DEFAULT_CAP, enumerate_shortest_paths

logger = logging.getLogger(__name__)


def gen_outer(n_mid: int, degree: int, weighted: bool = False) -> OuterInstance:
    """
    middle 노드마다 D/2개의 첫 층 이웃과 D/2개의 마지막 층 이웃을 새로 붙이고
    (c_k, z_k)를 v를 지나는 요구 쌍으로 묶는다.

    노드 id: 첫 층 0..F-1, middle F..F+n_mid-1, 마지막 층 그 뒤 (F = n_mid * D/2)

    Raises:
        OddDegree: D가 홀수일 때
    """
    if degree % 2:
        raise OddDegree(f"middle degree D={degree} must be even")
    if degree < 2:
        raise InvariantViolation(f"middle degree D={degree} must be at least 2")
    if n_mid < 1:
        raise InvariantViolation(f"need at least one middle node, got {n_mid}")

    half = degree // 2
    span = n_mid * half
    first = tuple(range(span))
    middle = tuple(range(span, span + n_mid))
    last = tuple(range(span + n_mid, 2 * span + n_mid))

    edges = []
    pairs: List[Pair] = []
    for j, v in enumerate(middle):
        for k in range(half):
            c = first[j * half + k]
            z = last[j * half + k]
            edges.append((c, v, 1))
            edges.append((v, z, 1))
            pairs.append((c, z))

    graph = Graph(len(first) + n_mid + len(last), False, weighted, tuple(edges))
    logger.debug("outer instance: %d middle node(s), D=%d, %d pair(s)", n_mid, degree, len(pairs))
    return OuterInstance(graph, PairSet(graph.n, tuple(pairs)), degree, first, middle, last)


def validate_outer(inst: OuterInstance, cap: int = DEFAULT_CAP) -> List[Violation]:
    """세 성질을 전수 검사. 빈 목록이면 유효"""
    graph = inst.graph
    violations: List[Violation] = []

    # 1. middle 차수
    if inst.degree % 2:
        violations.append(Violation("odd_degree", (inst.degree,), f"D={inst.degree} is odd"))
    for v in inst.middle:
        if graph.degree(v) != inst.degree:
            violations.append(Violation("middle_degree", (v,), f"degree {graph.degree(v)} != D={inst.degree}"))

    # 2. 두 간선짜리 유일한 최단경로
    usage: Dict[Pair, List[Pair]] = {key: [] for key in graph.edge_keys()}
    for s, t in inst.pairs:
        if inst.layer_of(s) != 0 or inst.layer_of(t) != 2:
            violations.append(Violation("pair_layers", (s, t), "pair must join the first and the last layer"))
        try:
            paths = enumerate_shortest_paths(graph, s, t, cap)
        except Disconnected:
            violations.append(Violation("disconnected", (s, t), "no path between the pair"))
            continue
        except CapExceeded as e:
            violations.append(Violation("enumeration_cap", (s, t), str(e)))
            continue

        if len(paths) != 1:
            violations.append(Violation("non_unique_path", (s, t), f"{len(paths)} shortest paths"))
        for path in paths:
            if path.hops != 2:
                violations.append(Violation("path_length", (s, t), f"shortest path {list(path.nodes)} has {path.hops} edge(s)"))
            for a, b in path.steps():
                usage[normalize_edge(a, b, graph.directed)].append((s, t))

    # 3. 간선마다 정확히 한 쌍
    for key, owners in sorted(usage.items()):
        distinct = sorted(set(owners))
        if len(distinct) != 1:
            violations.append(Violation("edge_usage", key, f"edge lies on the shortest paths of {len(distinct)} pair(s)"))

    return violations
