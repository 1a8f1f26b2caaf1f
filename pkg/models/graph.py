"""
Graph Models for the Preserver Toolkit

정확한 정수 가중치를 갖는 그래프, 요구 쌍 집합(PairSet), 경로(Path).
모든 객체는 생성 후 불변이며 여러 작업에서 공유해도 안전하다.
"""
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import combinations
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from models.errors import Disconnected, InvalidNode, InvariantViolation, ShapeMismatch

Edge = Tuple[int, int, int]
Pair = Tuple[int, int]


class Unreachable(Enum):
    """경로 없음 (정수 센티널 대신 별도 값)"""
    TOKEN = "unreachable"

    def __repr__(self) -> str:
        return "UNREACHABLE"


UNREACHABLE = Unreachable.TOKEN
Distance = Union[int, Unreachable]


def _check_node(node: Any, n: int) -> int:
    if isinstance(node, bool) or not isinstance(node, int) or not 0 <= node < n:
        raise InvalidNode(node, n)
    return node


@dataclass(frozen=True)
class Graph:
    """노드 0..n-1, 선택적 방향/가중치를 갖는 그래프"""
    n: int
    directed: bool = False
    weighted: bool = False
    edges: Tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise InvariantViolation(f"negative node count {self.n}")

        normalized: Dict[Pair, int] = {}
        for raw in self.edges:
            if len(raw) == 2:
                u, v = raw
                w = 1
            elif len(raw) == 3:
                u, v, w = raw
            else:
                raise InvariantViolation(f"malformed edge {raw!r}")

            _check_node(u, self.n)
            _check_node(v, self.n)
            if u == v:
                raise InvariantViolation(f"self-loop at node {u}")
            if isinstance(w, bool) or not isinstance(w, int):
                raise InvariantViolation(f"edge ({u}, {v}) has non-integer weight {w!r}")
            if self.weighted and w < 1:
                raise InvariantViolation(f"edge ({u}, {v}) has weight {w} < 1")
            if not self.weighted and w != 1:
                raise InvariantViolation(f"edge ({u}, {v}) has weight {w} in an unweighted graph")

            if not self.directed and u > v:
                u, v = v, u
            if (u, v) in normalized:
                raise InvariantViolation(f"duplicate edge ({u}, {v})")
            normalized[(u, v)] = w

        object.__setattr__(self, "edges", tuple(sorted((u, v, w) for (u, v), w in normalized.items())))

    # ------------------------------------------------------------------
    # 조회
    # ------------------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def weights(self) -> Dict[Pair, int]:
        """(u, v) -> w. 무방향 그래프는 양방향 모두 등록"""
        table = {}
        for u, v, w in self.edges:
            table[(u, v)] = w
            if not self.directed:
                table[(v, u)] = w
        return table

    @cached_property
    def adjacency(self) -> List[List[Tuple[int, int]]]:
        """정점별 나가는 (이웃, 가중치) 목록, 이웃 id 오름차순"""
        adj: List[List[Tuple[int, int]]] = [[] for _ in range(self.n)]
        for (u, v), w in self.weights.items():
            adj[u].append((v, w))
        for row in adj:
            row.sort()
        return adj

    @cached_property
    def reverse_adjacency(self) -> List[List[Tuple[int, int]]]:
        """정점별 들어오는 (이웃, 가중치) 목록"""
        if not self.directed:
            return self.adjacency
        adj: List[List[Tuple[int, int]]] = [[] for _ in range(self.n)]
        for u, v, w in self.edges:
            adj[v].append((u, w))
        for row in adj:
            row.sort()
        return adj

    def check_node(self, node: Any) -> int:
        return _check_node(node, self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.weights

    def weight(self, u: int, v: int) -> Optional[int]:
        return self.weights.get((u, v))

    def neighbors(self, u: int) -> List[int]:
        return [v for v, _ in self.adjacency[u]]

    def in_degree(self, v: int) -> int:
        return len(self.reverse_adjacency[v])

    def degree(self, v: int) -> int:
        if self.directed:
            return len(self.adjacency[v]) + len(self.reverse_adjacency[v])
        return len(self.adjacency[v])

    def edge_keys(self) -> List[Pair]:
        return [(u, v) for u, v, _ in self.edges]

    def reachable_from(self, source: int) -> List[bool]:
        """BFS 도달 가능성 (가중치 무시)"""
        self.check_node(source)
        seen = [False] * self.n
        seen[source] = True
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for v, _ in self.adjacency[u]:
                if not seen[v]:
                    seen[v] = True
                    queue.append(v)
        return seen

    def same_shape(self, other: "Graph") -> bool:
        return (self.n, self.directed, self.weighted) == (other.n, other.directed, other.weighted)

    def require_same_shape(self, other: "Graph") -> None:
        if not self.same_shape(other):
            raise ShapeMismatch(
                f"graph shapes differ: (n={self.n}, directed={self.directed}, weighted={self.weighted}) "
                f"vs (n={other.n}, directed={other.directed}, weighted={other.weighted})"
            )

    # ------------------------------------------------------------------
    # 파생 그래프
    # ------------------------------------------------------------------

    def with_edges(self, extra: Iterable[Sequence[int]]) -> "Graph":
        return Graph(self.n, self.directed, self.weighted, self.edges + tuple(tuple(e) for e in extra))

    def without_edges(self, removed: Iterable[Pair]) -> "Graph":
        drop = set()
        for u, v in removed:
            drop.add((u, v) if self.directed or u < v else (v, u))
        kept = tuple(e for e in self.edges if (e[0], e[1]) not in drop)
        return Graph(self.n, self.directed, self.weighted, kept)

    def spanning(self, keys: Iterable[Pair]) -> "Graph":
        """같은 노드 집합 위에서 주어진 간선만 (원래 가중치로) 남긴 부분그래프"""
        chosen = []
        for u, v in keys:
            w = self.weight(u, v)
            if w is None:
                raise InvariantViolation(f"edge ({u}, {v}) is not in the host graph")
            chosen.append((u, v, w))
        return Graph(self.n, self.directed, self.weighted, tuple(chosen))

    def reweighted(self, weights: Sequence[int]) -> "Graph":
        """edges 순서대로 새 가중치를 부여한 가중 그래프"""
        if len(weights) != self.m:
            raise ShapeMismatch(f"expected {self.m} weights, got {len(weights)}")
        return Graph(self.n, self.directed, True, tuple((u, v, w) for (u, v, _), w in zip(self.edges, weights)))

    # ------------------------------------------------------------------
    # 직렬화
    # ------------------------------------------------------------------

    def to_dict(self) -> Dict[str, Any]:
        """딕셔너리로 변환"""
        return {
            "n": self.n,
            "directed": self.directed,
            "weighted": self.weighted,
            "edges": [list(e) for e in self.edges],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Graph":
        """딕셔너리에서 생성"""
        return cls(
            n=data["n"],
            directed=bool(data["directed"]),
            weighted=bool(data["weighted"]),
            edges=tuple(tuple(e) for e in data["edges"]),
        )


@dataclass(frozen=True)
class PairSet:
    """순서쌍 요구 집합 P. 순서는 입력 순서를 유지한다 (소유권 first-wins에 사용)"""
    n: int
    pairs: Tuple[Pair, ...] = ()

    def __post_init__(self):
        seen = set()
        normalized = []
        for raw in self.pairs:
            s, t = raw
            _check_node(s, self.n)
            _check_node(t, self.n)
            if s == t:
                raise InvariantViolation(f"pair ({s}, {t}) has identical endpoints")
            if (s, t) in seen:
                raise InvariantViolation(f"duplicate pair ({s}, {t})")
            seen.add((s, t))
            normalized.append((s, t))
        object.__setattr__(self, "pairs", tuple(normalized))

    @classmethod
    def for_graph(cls, graph: Graph, pairs: Iterable[Pair]) -> "PairSet":
        """호스트 그래프에서 연결성까지 검사한 PairSet"""
        result = cls(graph.n, tuple(pairs))
        reach: Dict[int, List[bool]] = {}
        for s, t in result.pairs:
            if s not in reach:
                reach[s] = graph.reachable_from(s)
            if not reach[s][t]:
                raise Disconnected((s, t))
        return result

    @classmethod
    def subset_pairs(cls, n: int, nodes: Iterable[int]) -> "PairSet":
        """S × S (서로 다른 노드의 모든 순서쌍): 부분집합 보존자 요구"""
        members = sorted(set(nodes))
        pairs = [(s, t) for s in members for t in members if s != t]
        return cls(n, tuple(pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[Pair]:
        return iter(self.pairs)

    @cached_property
    def _index(self) -> frozenset:
        return frozenset(self.pairs)

    def __contains__(self, pair: object) -> bool:
        return pair in self._index

    def sources(self) -> List[int]:
        return sorted({s for s, _ in self.pairs})

    def by_source(self) -> Dict[int, List[Pair]]:
        """P_s: 출발점별 분할"""
        grouped: Dict[int, List[Pair]] = {}
        for s, t in self.pairs:
            grouped.setdefault(s, []).append((s, t))
        return grouped

    def endpoints(self) -> List[int]:
        return sorted({x for pair in self.pairs for x in pair})

    def chunks(self, size: int) -> List["PairSet"]:
        """입력 순서대로 size 개씩 나눈 그룹 (마지막 그룹은 더 작을 수 있음)"""
        return [PairSet(self.n, self.pairs[i:i + size]) for i in range(0, len(self.pairs), size)]

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "pairs": [list(p) for p in self.pairs]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "PairSet":
        return cls(data["n"], tuple(tuple(p) for p in data["pairs"]))


@dataclass(frozen=True)
class Path:
    """π(s, t)의 운반체: 노드 순서열과 총 가중치"""
    nodes: Tuple[int, ...]
    length: int

    @classmethod
    def from_nodes(cls, graph: Graph, nodes: Sequence[int]) -> "Path":
        nodes = tuple(nodes)
        if not nodes:
            raise InvariantViolation("empty path")
        for node in nodes:
            graph.check_node(node)
        if len(set(nodes)) != len(nodes):
            raise InvariantViolation(f"path {list(nodes)} repeats a node")
        length = 0
        for a, b in zip(nodes, nodes[1:]):
            w = graph.weight(a, b)
            if w is None:
                raise InvariantViolation(f"path {list(nodes)} uses missing edge ({a}, {b})")
            length += w
        return cls(nodes, length)

    @property
    def source(self) -> int:
        return self.nodes[0]

    @property
    def target(self) -> int:
        return self.nodes[-1]

    @property
    def hops(self) -> int:
        return len(self.nodes) - 1

    def steps(self) -> List[Pair]:
        """진행 방향으로 향한 간선 목록"""
        return list(zip(self.nodes, self.nodes[1:]))

    def segment(self, x: int, y: int) -> Optional[Tuple[int, ...]]:
        """x가 y보다 앞에 있을 때 x..y 구간, 아니면 None"""
        try:
            i = self.nodes.index(x)
            j = self.nodes.index(y)
        except ValueError:
            return None
        if i >= j:
            return None
        return self.nodes[i:j + 1]

    def ordered_node_pairs(self) -> Iterator[Pair]:
        """경로 위 (앞, 뒤) 노드 쌍 전부"""
        return combinations(self.nodes, 2)

    def to_dict(self) -> Dict[str, Any]:
        return {"nodes": list(self.nodes), "length": self.length}


def normalize_edge(u: int, v: int, directed: bool) -> Pair:
    """무방향 간선은 (작은 id, 큰 id)로 정규화"""
    if directed or u < v:
        return (u, v)
    return (v, u)
