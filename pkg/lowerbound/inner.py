"""
Inner Instance - 유일/간선 서로소 최단경로 시스템과 층 구조 변환
"""
import logging
from typing import Dict, List, Sequence, Set, Tuple

from models.errors import CapExceeded, Disconnected, InvariantViolation, NotDisjointSystem, ShapeMismatch
from models.graph import Graph, Pair, PairSet, Path, normalize_edge
from models.lowerbound import InnerInstance
from models.report import Violation
from pathfinder.shortest_paths import enumerate_shortest_paths

logger = logging.getLogger(__name__)


def gen_inner(pair_count: int, length: int, layered: bool = False) -> InnerInstance:
    """
    길이 length인 정점 서로소 경로 pair_count개. i번째 쌍 = i번째 경로의 양 끝점

    layered이면 노드의 층 = 경로 위 위치, ell = length + 1
    """
    if pair_count < 1 or length < 1:
        raise InvariantViolation(f"need pair_count >= 1 and length >= 1, got {pair_count}, {length}")

    width = length + 1
    edges = [(i * width + k, i * width + k + 1) for i in range(pair_count) for k in range(length)]
    pairs = tuple((i * width, i * width + length) for i in range(pair_count))
    graph = Graph(pair_count * width, False, False, tuple(edges))

    layers = {i * width + k: k for i in range(pair_count) for k in range(width)} if layered else None
    return InnerInstance(
        graph,
        PairSet(graph.n, pairs),
        {pair: length for pair in pairs},
        layers,
        width if layered else None,
    )


def unique_disjoint_paths(graph: Graph, pairs: PairSet) -> Dict[Pair, Path]:
    """
    쌍마다 유일한 최단경로. 경로들이 간선 서로소이고 합집합이 E(G)여야 한다.

    Raises:
        NotDisjointSystem: 위 조건 중 하나라도 깨질 때
    """
    paths: Dict[Pair, Path] = {}
    used: Dict[Pair, Pair] = {}
    for s, t in pairs:
        try:
            path = enumerate_shortest_paths(graph, s, t, cap=1)[0]
        except CapExceeded:
            raise NotDisjointSystem(f"pair ({s}, {t}) has several shortest paths") from None
        except Disconnected:
            raise NotDisjointSystem(f"pair ({s}, {t}) is not connected") from None
        for a, b in path.steps():
            key = normalize_edge(a, b, graph.directed)
            if key in used:
                raise NotDisjointSystem(f"pairs {used[key]} and ({s}, {t}) share edge {key}")
            used[key] = (s, t)
        paths[(s, t)] = path

    stray = set(graph.edge_keys()) - set(used)
    if stray:
        raise NotDisjointSystem(f"{len(stray)} edge(s) lie on no pair path, e.g. {min(stray)}")
    return paths


def validate_inner(inst: InnerInstance) -> List[Violation]:
    """내부 인스턴스 불변식 검사. 빈 목록이면 유효"""
    violations: List[Violation] = []
    try:
        paths = unique_disjoint_paths(inst.graph, inst.pairs)
    except NotDisjointSystem as e:
        return [Violation("not_disjoint_system", (), e.detail)]

    for pair, path in paths.items():
        recorded = inst.path_lengths.get(pair)
        if recorded != path.length:
            violations.append(Violation("path_length", pair, f"recorded {recorded}, actual {path.length}"))

    if inst.layered:
        layers = inst.layers
        if any(v not in layers for v in range(inst.graph.n)):
            violations.append(Violation("missing_layer", (), "every node of a layered instance needs a layer"))
            return violations
        for u, v, _ in inst.graph.edges:
            if abs(layers[u] - layers[v]) != 1:
                violations.append(Violation("non_layered_edge", (u, v), f"layers {layers[u]} and {layers[v]}"))
        for (s, t), path in paths.items():
            if layers[s] != 0 or layers[t] != inst.ell - 1 or path.length != inst.ell - 1:
                violations.append(Violation(
                    "pair_layers", (s, t),
                    f"pair must span layer 0 -> {inst.ell - 1} at distance {inst.ell - 1}",
                ))
    return violations


def _segments(nodes: Sequence[int], size: int) -> List[Tuple[int, ...]]:
    """길이 size인 부분경로로 자르고 남는 꼬리는 버린다"""
    hops = len(nodes) - 1
    return [tuple(nodes[start:start + size + 1]) for start in range(0, hops - size + 1, size)]


def layered_regularize(graph: Graph, pairs: PairSet) -> InnerInstance:
    """
    1. 평균 쌍 거리 L을 구하고 각 쌍의 경로를 길이 ⌊L/2⌋ 부분경로로 나눈다 (나머지 간선 삭제)
    2. ⌊L/2⌋ + 1개 층 복사본을 만들고 부분경로를 층을 따라 놓는다

    출력은 부분경로 간선만 유지하고 노드를 (층, 원래 id) 순으로 다시 번호 매긴다.

    Raises:
        ShapeMismatch: 유향 또는 가중 그래프
        NotDisjointSystem: 유일/간선 서로소 경로 시스템이 아닐 때
    """
    if graph.directed or graph.weighted:
        raise ShapeMismatch("layered regularization needs an undirected, unweighted graph")
    if not len(pairs):
        raise NotDisjointSystem("empty pair set")

    paths = unique_disjoint_paths(graph, pairs)
    total = sum(path.hops for path in paths.values())
    size = total // (2 * len(pairs)) or 1

    segments: List[Tuple[int, ...]] = []
    for pair in pairs:
        segments.extend(_segments(paths[pair].nodes, size))

    copies: Set[Tuple[int, int]] = {(k, v) for segment in segments for k, v in enumerate(segment)}
    ids = {node: i for i, node in enumerate(sorted(copies))}

    edges = []
    new_pairs = []
    for segment in segments:
        for k in range(size):
            edges.append((ids[(k, segment[k])], ids[(k + 1, segment[k + 1])]))
        new_pairs.append((ids[(0, segment[0])], ids[(size, segment[-1])]))

    layered = Graph(len(ids), False, False, tuple(edges))
    logger.info(
        "layered regularization: L=%d/%d, segment length %d, %d pair(s) -> %d pair(s), %d node(s)",
        total, len(pairs), size, len(pairs), len(new_pairs), layered.n,
    )
    return InnerInstance(
        layered,
        PairSet(layered.n, tuple(new_pairs)),
        {pair: size for pair in new_pairs},
        {i: k for (k, _), i in ids.items()},
        size + 1,
    )


def inner_from_graph(graph: Graph, pairs: PairSet, layers: Dict[int, int] = None) -> InnerInstance:
    """파일에서 읽은 그래프 + 쌍 (+ 층 주석)으로 내부 인스턴스 생성"""
    paths = unique_disjoint_paths(graph, pairs)
    lengths = {pair: path.length for pair, path in paths.items()}
    if not layers:
        return InnerInstance(graph, pairs, lengths)
    return InnerInstance(graph, pairs, lengths, dict(layers), max(layers.values()) + 1)
