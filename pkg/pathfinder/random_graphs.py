"""
Random instance generators (seeded)
"""
import random
from typing import List, Set

from models.errors import InvariantViolation
from models.graph import Graph, Pair, PairSet, normalize_edge


def _rng(seed_or_rng) -> random.Random:
    return seed_or_rng if isinstance(seed_or_rng, random.Random) else random.Random(seed_or_rng)


def random_graph(
    n: int,
    m: int,
    directed: bool = False,
    weighted: bool = False,
    max_weight: int = 10,
    seed=0,
    connected: bool = True,
) -> Graph:
    """
    G(n, m). connected이면 무작위 순열을 따라 경로(유향이면 순환)를 먼저 깐다.
    m이 가능한 간선 수를 넘으면 완전 그래프에서 멈춘다.
    """
    if n < 1:
        raise InvariantViolation(f"need at least one node, got {n}")
    rng = _rng(seed)

    keys: Set[Pair] = set()
    if connected and n > 1:
        order = list(range(n))
        rng.shuffle(order)
        for a, b in zip(order, order[1:]):
            keys.add(normalize_edge(a, b, directed))
        if directed and n > 2:
            keys.add((order[-1], order[0]))

    limit = n * (n - 1) if directed else n * (n - 1) // 2
    target = min(max(m, len(keys)), limit)
    while len(keys) < target:
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            keys.add(normalize_edge(u, v, directed))

    edges = [(u, v, rng.randint(1, max_weight) if weighted else 1) for u, v in sorted(keys)]
    return Graph(n, directed, weighted, tuple(edges))


def random_bipartite(n: int, m: int, seed=0) -> Graph:
    """무작위 이분 그래프. 양쪽을 번갈아 지나는 경로로 연결을 보장한다"""
    if n < 1:
        raise InvariantViolation(f"need at least one node, got {n}")
    rng = _rng(seed)
    order = list(range(n))
    rng.shuffle(order)
    side = {v: i % 2 for i, v in enumerate(order)}

    keys: Set[Pair] = {normalize_edge(a, b, False) for a, b in zip(order, order[1:])}
    left = [v for v in order if side[v] == 0]
    right = [v for v in order if side[v] == 1]
    target = min(max(m, len(keys)), len(left) * len(right))
    while len(keys) < target:
        keys.add(normalize_edge(rng.choice(left), rng.choice(right), False))
    return Graph(n, False, False, tuple(sorted(keys)))


def random_pairs(graph: Graph, count: int, seed=0) -> PairSet:
    """서로 연결된 순서쌍 중 count개 (가능한 쌍이 더 적으면 전부)"""
    rng = _rng(seed)
    candidates: List[Pair] = []
    for s in range(graph.n):
        reach = graph.reachable_from(s)
        candidates.extend((s, t) for t in range(graph.n) if t != s and reach[t])
    chosen = rng.sample(candidates, min(count, len(candidates)))
    return PairSet(graph.n, tuple(chosen))
