"""
Shortest Paths - 정확한 정수 산술 기반 최단경로 계산과 검증용 오라클
"""
import heapq
import logging
from typing import Iterator, List, Optional, Tuple

from models.errors import CapExceeded, Disconnected
from models.graph import UNREACHABLE, Distance, Graph, Path

logger = logging.getLogger(__name__)

DEFAULT_CAP = 10000


def _dijkstra(
    adjacency: List[List[Tuple[int, int]]],
    source: int,
) -> Tuple[List[Optional[int]], List[int]]:
    """
    Dijkstra (heapq). 가중치는 양의 정수(임의 정밀도)여야 한다.

    Returns:
        (dist, parent) - 도달 불가 노드는 dist None, parent -1
    """
    n = len(adjacency)
    dist: List[Optional[int]] = [None] * n
    parent = [-1] * n
    dist[source] = 0
    heap = [(0, source)]
    done = [False] * n

    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v, w in adjacency[u]:
            nd = d + w
            if dist[v] is None or nd < dist[v]:
                dist[v] = nd
                parent[v] = u
                heapq.heappush(heap, (nd, v))

    return dist, parent


def single_source_distances(graph: Graph, source: int) -> List[Distance]:
    """source에서 모든 노드까지의 거리 (도달 불가는 UNREACHABLE)"""
    graph.check_node(source)
    dist, _ = _dijkstra(graph.adjacency, source)
    return [UNREACHABLE if d is None else d for d in dist]


def distances_to(graph: Graph, target: int) -> List[Distance]:
    """모든 노드에서 target까지의 거리 (역방향 그래프에서 Dijkstra)"""
    graph.check_node(target)
    dist, _ = _dijkstra(graph.reverse_adjacency, target)
    return [UNREACHABLE if d is None else d for d in dist]


def shortest_path_tree(graph: Graph, source: int) -> Tuple[List[Distance], List[int]]:
    """source 기준 거리와 부모 배열"""
    graph.check_node(source)
    dist, parent = _dijkstra(graph.adjacency, source)
    return [UNREACHABLE if d is None else d for d in dist], parent


def shortest_distance(graph: Graph, u: int, v: int) -> Distance:
    """u에서 v까지의 정확한 최단거리"""
    graph.check_node(u)
    graph.check_node(v)
    return single_source_distances(graph, u)[v]


def all_pairs_distances(graph: Graph) -> List[List[Distance]]:
    """D[u][v] = shortest_distance(G, u, v), D[u][u] = 0"""
    return [single_source_distances(graph, u) for u in range(graph.n)]


def enumerate_shortest_paths(graph: Graph, u: int, v: int, cap: int = DEFAULT_CAP) -> List[Path]:
    """
    u에서 v로 가는 서로 다른 최단경로를 모두 나열 (최대 cap 개)

    양 끝점에서 미리 구한 거리로 최단경로 DAG를 만들고 DFS로 나열한다.
    간선 가중치가 양수이므로 DAG 위의 모든 경로는 단순 경로다.

    Raises:
        CapExceeded: cap 보다 많은 최단경로가 존재할 때
        Disconnected: u에서 v로 가는 경로가 없을 때
    """
    graph.check_node(u)
    graph.check_node(v)
    if cap < 1:
        raise ValueError("cap must be at least 1")

    from_u = single_source_distances(graph, u)
    to_v = distances_to(graph, v)
    total = from_u[v]
    if total is UNREACHABLE:
        raise Disconnected((u, v))

    def on_dag(a: int, b: int, w: int) -> bool:
        da, db = from_u[a], to_v[b]
        return da is not UNREACHABLE and db is not UNREACHABLE and da + w + db == total

    # 명시적 스택: 현재 경로와 노드별 이웃 반복자
    paths: List[Path] = []
    stack: List[int] = [u]
    frames: List[Iterator[Tuple[int, int]]] = [iter(graph.adjacency[u])]

    while frames:
        node = stack[-1]
        if node == v:
            if len(paths) >= cap:
                raise CapExceeded(u, v, cap)
            paths.append(Path(tuple(stack), total))
            stack.pop()
            frames.pop()
            continue
        for nxt, w in frames[-1]:
            if on_dag(node, nxt, w):
                stack.append(nxt)
                frames.append(iter(graph.adjacency[nxt]))
                break
        else:
            stack.pop()
            frames.pop()

    logger.debug("enumerated %d shortest path(s) %d -> %d (length %d)", len(paths), u, v, total)
    return paths


def has_unique_shortest_path(graph: Graph, u: int, v: int) -> bool:
    try:
        return len(enumerate_shortest_paths(graph, u, v, cap=1)) == 1
    except CapExceeded:
        return False


def is_subgraph(sub: Graph, host: Graph) -> bool:
    """sub의 모든 간선이 같은 가중치로 host에 있는지"""
    sub.require_same_shape(host)
    return all(host.weight(a, b) == w for a, b, w in sub.edges)


def path_between(parent: List[int], source: int, target: int) -> Optional[List[int]]:
    """부모 배열에서 source -> target 경로 복원"""
    nodes = [target]
    node = target
    while node != source:
        node = parent[node]
        if node == -1:
            return None
        nodes.append(node)
    nodes.reverse()
    return nodes
