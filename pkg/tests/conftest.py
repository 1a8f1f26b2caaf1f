"""
공용 fixture와 독립 최단거리 오라클
"""
import os
import sys

# 저장소 루트를 sys.path에 추가
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import networkx as nx
import pytest

from models.graph import UNREACHABLE, Graph


def bellman_ford(graph: Graph, source: int):
    """전체 간선 완화를 n-1번 반복하는 단일 출발점 오라클"""
    dist = [None] * graph.n
    dist[source] = 0
    arcs = list(graph.weights.items())
    for _ in range(max(graph.n - 1, 1)):
        changed = False
        for (u, v), w in arcs:
            if dist[u] is not None and (dist[v] is None or dist[u] + w < dist[v]):
                dist[v] = dist[u] + w
                changed = True
        if not changed:
            break
    return [UNREACHABLE if d is None else d for d in dist]


def to_networkx(graph: Graph):
    g = nx.DiGraph() if graph.directed else nx.Graph()
    g.add_nodes_from(range(graph.n))
    for u, v, w in graph.edges:
        g.add_edge(u, v, weight=w)
    return g


@pytest.fixture
def oracle():
    return bellman_ford


@pytest.fixture
def nx_graph():
    return to_networkx


@pytest.fixture
def path_graph():
    def make(n: int, weighted: bool = False, directed: bool = False) -> Graph:
        return Graph(n, directed, weighted, tuple((i, i + 1, 1) for i in range(n - 1)))
    return make


@pytest.fixture
def cycle4():
    return Graph(4, edges=((0, 1), (1, 2), (2, 3), (3, 0)))


@pytest.fixture
def diamond():
    """s=0, x=1, x'=2, y=3, y'=4; (x, y')가 교차 간선"""
    return Graph(5, edges=((0, 1), (0, 2), (1, 3), (2, 4), (1, 4)))
