"""
Undirected/Unweighted Preserver - 리프트 + lazy tiebreaking + 유도 매칭 분할
"""
import logging
from typing import Dict, Iterable, Mapping, Optional, Set, Tuple

from builder.bipartite_lift import bipartite_lift, contract
from models.errors import CertificateError, OwnerNotFound
from models.graph import Graph, Pair, PairSet, normalize_edge
from models.preserver import MatchingPartition, Preserver
from models.schemes import SourceTree
from tiebreaker.lazy import DEFAULT_MAX_REPAIRS, lazy_scheme

logger = logging.getLogger(__name__)


def check_induced_matching(graph: Graph, matching: Iterable[Pair]) -> bool:
    """M이 매칭이고 M의 끝점이 유도하는 부분그래프의 간선이 정확히 M인지"""
    edges = {normalize_edge(u, v, graph.directed) for u, v in matching}
    endpoints: Set[int] = set()
    for u, v in edges:
        if u in endpoints or v in endpoints:
            return False
        endpoints.update((u, v))

    for u in endpoints:
        for v in graph.neighbors(u):
            if v in endpoints and normalize_edge(u, v, graph.directed) not in edges:
                return False
    return True


def matching_partition(
    trees: Mapping[int, SourceTree],
    lifted_sub: Graph,
    host: Optional[Graph] = None,
) -> MatchingPartition:
    """
    H'의 간선을 분기 간선과 (s, dist(s, u) mod 3) 클래스로 나눈다

    Args:
        trees: lazy_scheme 결과
        lifted_sub: 분할할 간선 집합 H'
        host: 유도 매칭을 검사할 그래프 (기본값 H')

    Raises:
        OwnerNotFound: 어느 트리에도 없는 간선
        CertificateError: 유도 매칭이 아닌 클래스
    """
    if host is None:
        host = lifted_sub

    leftover: Set[Pair] = set()
    for tree in trees.values():
        leftover.update(normalize_edge(x, y, False) for x, y in tree.branching)
    leftover &= set(lifted_sub.edge_keys())

    # 간선 -> (소유 출발점, 가까운 끝점의 층)
    near: Dict[Pair, Tuple[int, int]] = {}
    for source in sorted(trees):
        tree = trees[source]
        for x, y in tree.edges:
            near.setdefault(normalize_edge(x, y, False), (source, tree.layer[x]))

    classes: Dict[Tuple[int, int], Set[Pair]] = {}
    owners: Dict[Pair, int] = {}
    for key in lifted_sub.edge_keys():
        if key in leftover:
            continue
        if key not in near:
            raise OwnerNotFound(key)
        source, depth = near[key]
        owners[key] = source
        classes.setdefault((source, depth % 3), set()).add(key)

    for (source, residue), edges in sorted(classes.items()):
        if not check_induced_matching(host, edges):
            raise CertificateError(f"class C_{source}^{residue} is not an induced matching")

    return MatchingPartition(
        {key: frozenset(edges) for key, edges in classes.items()},
        frozenset(leftover),
        owners,
    )


def build_uu_preserver(
    graph: Graph,
    pairs: PairSet,
    max_repairs: int = DEFAULT_MAX_REPAIRS,
) -> Tuple[Preserver, MatchingPartition]:
    """
    무방향/무가중 그래프의 보존자

    1. (G, P)를 이분 리프트 (G', P')로 올린다
    2. G'에서 lazy 트리를 만들고 H' = 트리 간선의 합집합
    3. H'를 분할 증명서와 함께 H로 축약한다

    Raises:
        ShapeMismatch: 유향 또는 가중 그래프
        Disconnected: 연결되지 않은 쌍
        CertificateError: 분기 간선 또는 매칭 분할 증명서가 성립하지 않을 때
    """
    lift = bipartite_lift(graph, pairs)
    trees = lazy_scheme(lift.lifted, lift.lifted_pairs, max_repairs=max_repairs)

    keys: Set[Pair] = set()
    for tree in trees.values():
        keys |= tree.undirected_edges()
    lifted_sub = lift.lifted.spanning(keys)

    partition = matching_partition(trees, lifted_sub, host=lift.lifted)
    branch_bound = 2 * len(lift.lifted_pairs)
    if len(partition.leftover_branching) > branch_bound:
        raise CertificateError(
            f"{len(partition.leftover_branching)} branching edge(s) > 2|P'| = {branch_bound}"
        )
    if lifted_sub.m != len(partition.leftover_branching) + len(partition.covered_edges()):
        raise CertificateError("matching classes and branching edges do not cover H'")

    subgraph = contract(lifted_sub, lift)

    # 원래 쌍 순서대로 first-wins
    provenance: Dict[Pair, Pair] = {}
    for s, t in pairs:
        for lifted_pair in lift.lifted_pairs_for(s, t):
            route = trees[lifted_pair[0]].path_to(lifted_pair[1])
            for a, b in zip(route, route[1:]):
                u, _ = lift.origin(a)
                v, _ = lift.origin(b)
                provenance.setdefault(normalize_edge(u, v, False), (s, t))

    logger.info(
        "uu preserver: %d pair(s) -> lifted %d edge(s), %d branching, %d class(es) -> %d edge(s)",
        len(pairs), lifted_sub.m, len(partition.leftover_branching), len(partition.classes), subgraph.m,
    )
    return Preserver(subgraph, pairs, provenance), partition
