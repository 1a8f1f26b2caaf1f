"""
Directed/Weighted Preserver - 일관 tiebreaking 경로의 합집합과 분기 삼중쌍 증명서
"""
import logging
from math import comb
from typing import Dict, List

from models.errors import CertificateError, NotDirected
from models.graph import Graph, Pair, PairSet, normalize_edge
from models.preserver import GroupCertificate, Preserver
from models.schemes import PathSystem
from tiebreaker.consistent import consistent_scheme

logger = logging.getLogger(__name__)


def group_size(n: int) -> int:
    """⌈n^(1/3)⌉ (정수 연산)"""
    g = 1
    while g ** 3 < n:
        g += 1
    return g


def oriented_union(system: PathSystem) -> Graph:
    """저장된 경로를 출발점에서 멀어지는 방향으로 향하게 한 간선 합집합 (유향 그래프)"""
    host = system.host
    arcs: Dict[Pair, int] = {}
    for path in system.entries.values():
        for a, b in path.steps():
            arcs[(a, b)] = host.weight(a, b)
    return Graph(host.n, True, host.weighted, tuple((a, b, w) for (a, b), w in arcs.items()))


def count_branching_triples(graph: Graph) -> int:
    """
    Σ_v C(indeg(v), 3)

    Raises:
        NotDirected: 무방향 그래프 (호출자가 먼저 방향을 정해야 한다)
    """
    if not graph.directed:
        raise NotDirected("branching triples are defined on directed graphs; orient the edges first")
    return sum(comb(graph.in_degree(v), 3) for v in range(graph.n))


def build_dw_preserver(graph: Graph, pairs: PairSet) -> Preserver:
    """
    유향/가중 그래프의 보존자

    1. P를 ⌈n^(1/3)⌉ 크기 그룹으로 나눈다
    2. 그룹마다 일관 tiebreaking 경로의 합집합을 만든다
    3. 그룹 합집합을 다시 합친다

    Raises:
        Disconnected: 연결되지 않은 쌍이 있을 때
        CertificateError: 그룹 증명서가 성립하지 않을 때
    """
    size = group_size(graph.n)
    system = consistent_scheme(graph, pairs)

    provenance: Dict[Pair, Pair] = {}
    certificates: List[GroupCertificate] = []

    for group in pairs.chunks(size):
        sub = PathSystem(graph, {pair: system.entries[pair] for pair in group})
        oriented = oriented_union(sub)
        triples = count_branching_triples(oriented)
        bound = comb(len(group), 3)

        if triples > bound:
            raise CertificateError(f"group of {len(group)} pairs has {triples} branching triples > C(p,3) = {bound}")
        if oriented.m > 2 * graph.n + triples:
            raise CertificateError(f"group union has {oriented.m} edges > 2n + {triples}")

        certificates.append(GroupCertificate(len(group), oriented.m, triples, bound))
        for pair in group:
            for a, b in sub.entries[pair].steps():
                provenance.setdefault(normalize_edge(a, b, graph.directed), pair)

    subgraph = graph.spanning(provenance)
    logger.info(
        "dw preserver: %d pair(s) in %d group(s) of size %d -> %d edge(s)",
        len(pairs), len(certificates), size, subgraph.m,
    )
    return Preserver(subgraph, pairs, provenance, tuple(certificates))
