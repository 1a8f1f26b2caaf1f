"""
Lazy Tiebreaking - 출발점별 최단경로 트리에서 분기를 가능한 한 늦춘다

트리 T_s의 같은 층 비분기 간선 (x, y), (x', y') 사이에 그래프 간선 (x, y')가 있으면
y'의 경로를 s ~> x -> y' 로 다시 잇는다. 더 이상 위반이 없을 때까지 반복한다.
"""
import logging
from collections import deque
from typing import Dict, Iterable, List, Mapping, Optional, Set, Tuple

from models.errors import Disconnected, InvariantViolation, NotBipartite, RepairBudgetExceeded, ShapeMismatch
from models.graph import UNREACHABLE, Graph, Pair, PairSet
from models.report import Violation
from models.schemes import SourceTree
from pathfinder.shortest_paths import single_source_distances

logger = logging.getLogger(__name__)

DEFAULT_MAX_REPAIRS = 100000


def bipartite_sides(graph: Graph) -> List[int]:
    """
    2-색칠 (0/1). 고립 노드는 0.

    Raises:
        NotBipartite: 홀수 사이클이 있을 때
    """
    side = [-1] * graph.n
    for start in range(graph.n):
        if side[start] != -1:
            continue
        side[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in graph.neighbors(u):
                if side[v] == -1:
                    side[v] = 1 - side[u]
                    queue.append(v)
                elif side[v] == side[u]:
                    raise NotBipartite(f"edge ({u}, {v}) closes an odd cycle")
    return side


def _require_simple_undirected(graph: Graph) -> None:
    if graph.directed or graph.weighted:
        raise ShapeMismatch("lazy tiebreaking needs an undirected, unweighted graph")


def _layers(graph: Graph, source: int, targets: Iterable[int]) -> Dict[int, int]:
    dist = single_source_distances(graph, source)
    for t in targets:
        if dist[t] is UNREACHABLE:
            raise Disconnected((source, t))
    return {v: d for v, d in enumerate(dist) if d is not UNREACHABLE}


def initial_tree(graph: Graph, source: int, targets: Iterable[int]) -> SourceTree:
    """BFS 트리 (최소 id 부모)를 목표 노드의 조상으로 잘라낸 초기 트리"""
    targets = list(targets)
    layer = _layers(graph, source, targets)
    parent: Dict[int, int] = {}
    for t in targets:
        node = t
        while node != source and node not in parent:
            up = min(u for u in graph.neighbors(node) if layer.get(u) == layer[node] - 1)
            parent[node] = up
            node = up
    return SourceTree.from_parents(source, parent, layer)


def _potential(children: Mapping[int, Set[int]], layer: Mapping[int, int]) -> Tuple[int, ...]:
    """분기 간선 거리의 내림차순 목록 (사전식 비교, 공통 접두사면 긴 쪽이 크다)"""
    distances = [layer[y] for kids in children.values() if len(kids) >= 2 for y in kids]
    return tuple(sorted(distances, reverse=True))


def _find_violation(
    graph: Graph,
    parent: Mapping[int, int],
    children: Mapping[int, Set[int]],
    layer: Mapping[int, int],
) -> Optional[Tuple[Pair, Pair]]:
    """
    가장 먼 층의 위반 하나를 반환: ((x, y), (x', y')) 이고 (x, y') ∈ E 이면 y'를 x 아래로 옮긴다.
    같은 층에서는 (x', y', x, y)가 가장 작은 것.
    """
    by_layer: Dict[int, List[Pair]] = {}
    for y, x in parent.items():
        if len(children[x]) == 1:
            by_layer.setdefault(layer[y], []).append((x, y))

    for depth in sorted(by_layer, reverse=True):
        edges = sorted(by_layer[depth])
        best = None
        for x, y in edges:
            for x2, y2 in edges:
                if x == x2 or not graph.has_edge(x, y2):
                    continue
                key = (x2, y2, x, y)
                if best is None or key < best:
                    best = key
        if best is not None:
            x2, y2, x, y = best
            return (x, y), (x2, y2)
    return None


def make_lazy(
    graph: Graph,
    tree: SourceTree,
    targets: Iterable[int],
    max_repairs: int = DEFAULT_MAX_REPAIRS,
) -> SourceTree:
    """
    임의의 유효한 최단경로 트리를 lazy 트리로 수리

    Args:
        graph: 무방향 무가중 이분 그래프
        tree: targets를 모두 포함하는 층 구조 트리
        targets: 보존해야 할 목표 노드 (P_s의 끝점)
        max_repairs: 재배선 반복 한도

    Raises:
        RepairBudgetExceeded: 한도를 넘을 때
    """
    source = tree.source
    targets = set(targets)
    layer = _layers(graph, source, targets)

    parent: Dict[int, int] = {}
    children: Dict[int, Set[int]] = {}
    for x, y in tree.edges:
        if y in parent or y == source:
            raise InvariantViolation(f"node {y} has more than one parent in T_{source}")
        if not graph.has_edge(x, y) or layer.get(y) != layer.get(x, -2) + 1:
            raise InvariantViolation(f"edge ({x}, {y}) of T_{source} is not a shortest-path tree edge")
        parent[y] = x
        children.setdefault(x, set()).add(y)
    for node in list(parent):
        children.setdefault(node, set())
    children.setdefault(source, set())
    for t in targets:
        if t not in parent:
            raise InvariantViolation(f"target {t} is not in T_{source}")

    repairs = tree.repairs
    potential = _potential(children, layer)
    while True:
        found = _find_violation(graph, parent, children, layer)
        if found is None:
            break
        if repairs - tree.repairs >= max_repairs:
            raise RepairBudgetExceeded(source, max_repairs)

        (x, _), (x2, y2) = found
        # y'의 경로를 s ~> x -> y' 로 교체
        parent[y2] = x
        children[x2].discard(y2)
        children[x].add(y2)
        # 더 이상 어떤 쌍의 경로에도 없는 간선 제거
        node = x2
        while node != source and not children[node] and node not in targets:
            up = parent.pop(node)
            del children[node]
            children[up].discard(node)
            node = up

        repaired = _potential(children, layer)
        if not repaired > potential:
            raise InvariantViolation(f"lazy repair of T_{source} did not increase the branching potential")
        potential = repaired
        repairs += 1

    if repairs:
        logger.debug("T_%d: %d lazy repair(s)", source, repairs - tree.repairs)
    return SourceTree.from_parents(source, parent, layer, repairs)


def lazy_scheme(
    graph: Graph,
    pairs: PairSet,
    max_repairs: int = DEFAULT_MAX_REPAIRS,
) -> Dict[int, SourceTree]:
    """
    P_s가 비어 있지 않은 출발점마다 lazy 트리 T_s를 만든다

    Raises:
        NotBipartite: 그래프가 이분 그래프가 아닐 때
        Disconnected: 연결되지 않은 쌍이 있을 때
    """
    _require_simple_undirected(graph)
    bipartite_sides(graph)

    trees: Dict[int, SourceTree] = {}
    for source, group in sorted(pairs.by_source().items()):
        targets = [t for _, t in group]
        start = initial_tree(graph, source, targets)
        trees[source] = make_lazy(graph, start, targets, max_repairs=max_repairs)

    total = sum(t.repairs for t in trees.values())
    logger.info("lazy scheme: %d tree(s), %d repair(s)", len(trees), total)
    return trees


def check_lazy(trees: Mapping[int, SourceTree], graph: Graph, pairs: PairSet) -> List[Violation]:
    """
    (1) 각 T_s가 P_s의 거리를 보존하는 트리인지
    (2) 같은 층의 서로 다른 비분기 간선 (x, y), (x', y') 사이에 (x, y') 또는 (x', y) 간선이 없는지
    """
    violations: List[Violation] = []

    for source, group in sorted(pairs.by_source().items()):
        tree = trees.get(source)
        if tree is None:
            violations.append(Violation("missing_tree", (source,), f"no tree for source {source}"))
            continue
        dist = single_source_distances(graph, source)

        # (1) 트리 구조와 거리 보존
        seen_children: Set[int] = set()
        for x, y in tree.edges:
            if not graph.has_edge(x, y):
                violations.append(Violation("foreign_edge", (source, (x, y)), "tree edge is not a graph edge"))
            elif dist[x] is UNREACHABLE or dist[y] != dist[x] + 1:
                violations.append(Violation("non_layered_edge", (source, (x, y)),
                                            "tree edge does not advance one layer from the source"))
            if y in seen_children or y == source:
                violations.append(Violation("not_a_tree", (source, y), f"node {y} has several parents"))
            seen_children.add(y)

        for x, y in tree.edges:
            if tree.path_to(x) is None:
                violations.append(Violation("not_a_tree", (source, x), f"node {x} is not connected to the root"))
                break

        for _, t in group:
            route = tree.path_to(t)
            if route is None or len(route) - 1 != dist[t]:
                violations.append(Violation("distance_not_preserved", (source, t),
                                            f"tree route {route} does not realise distance {dist[t]}"))

        # (2) 같은 층 비분기 간선 사이의 교차 간선
        plain = sorted(e for e in tree.edges if e not in tree.branching and dist[e[0]] is not UNREACHABLE)
        by_layer: Dict[int, List[Pair]] = {}
        for x, y in plain:
            if dist[y] == dist[x] + 1:
                by_layer.setdefault(dist[y], []).append((x, y))
        for depth in sorted(by_layer):
            edges = by_layer[depth]
            for i, (x, y) in enumerate(edges):
                for x2, y2 in edges[i + 1:]:
                    if graph.has_edge(x, y2) or graph.has_edge(x2, y):
                        violations.append(Violation(
                            "lazy_crossing",
                            (source, (x, y), (x2, y2)),
                            f"non-branching edges ({x}, {y}) and ({x2}, {y2}) at layer {depth} are crossed",
                        ))

    return violations
