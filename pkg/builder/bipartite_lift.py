"""
Bipartite Preserver Lift - 이중 덮개 G'와 축약(contraction)

노드 x의 복사본은 x_1 = x, x_2 = x + n.
원래 간선 (u, v)마다 (u_1, v_2), (u_2, v_1)을 만들고,
쌍 (s, t)는 거리의 홀짝에 따라 다시 요구한다.
"""
import logging
from dataclasses import replace
from typing import Dict, Set

from models.errors import Disconnected, ShapeMismatch
from models.graph import UNREACHABLE, Graph, Pair, PairSet, normalize_edge
from models.preserver import LiftResult, Parity
from pathfinder.shortest_paths import single_source_distances

logger = logging.getLogger(__name__)


def _require_simple_undirected(graph: Graph, what: str) -> None:
    if graph.directed or graph.weighted:
        raise ShapeMismatch(f"{what} must be undirected and unweighted")


def bipartite_lift(graph: Graph, pairs: PairSet) -> LiftResult:
    """
    (G, P) -> (G', P')

    Raises:
        ShapeMismatch: 유향 또는 가중 그래프
        Disconnected: 연결되지 않은 쌍
    """
    _require_simple_undirected(graph, "lift input")
    n = graph.n

    lifted_edges = []
    for u, v, _ in graph.edges:
        lifted_edges.append((u, v + n))
        lifted_edges.append((v, u + n))
    lifted = Graph(2 * n, False, False, tuple(lifted_edges))

    parity: Dict[Pair, Parity] = {}
    for source, group in pairs.by_source().items():
        dist = single_source_distances(graph, source)
        for s, t in group:
            if dist[t] is UNREACHABLE:
                raise Disconnected((s, t))
            parity[(s, t)] = Parity.EVEN if dist[t] % 2 == 0 else Parity.ODD

    # P 입력 순서 유지
    result = LiftResult(n, lifted, PairSet(2 * n), parity)
    lifted_pairs = [pair for s, t in pairs for pair in result.lifted_pairs_for(s, t)]

    logger.debug("lifted %d node(s), %d pair(s) -> %d node(s), %d pair(s)",
                 n, len(pairs), 2 * n, len(lifted_pairs))
    return replace(result, lifted_pairs=PairSet(2 * n, tuple(lifted_pairs)))


def contract(lifted_sub: Graph, lift: LiftResult) -> Graph:
    """
    H' -> H: (u_1, v_2) 또는 (u_2, v_1)이 H'에 있으면 (u, v)

    Raises:
        ShapeMismatch: H'가 리프트 그래프와 같은 모양이 아니거나 리프트 그래프 밖의 간선이 있을 때
    """
    lifted_sub.require_same_shape(lift.lifted)
    n = lift.original_n

    keys: Set[Pair] = set()
    for a, b, _ in lifted_sub.edges:
        if not lift.lifted.has_edge(a, b):
            raise ShapeMismatch(f"edge ({a}, {b}) is not in the lifted graph")
        # 정규화된 무방향 간선이므로 a < n <= b
        keys.add(normalize_edge(a, b - n, False))

    return Graph(n, False, False, tuple(sorted(keys)))
