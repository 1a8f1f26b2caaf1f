"""
Tiebreaking Scheme Models - PathSystem(π(P))과 출발점별 트리 T_s
"""
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, FrozenSet, List, Mapping, Optional, Sequence, Set, Tuple, Union

from models.errors import InvariantViolation
from models.graph import Graph, Pair, PairSet, Path, normalize_edge
from pathfinder.shortest_paths import single_source_distances


@dataclass(frozen=True)
class PathSystem:
    """요구 쌍마다 하나씩 저장된 최단경로"""
    host: Graph
    entries: Dict[Pair, Path] = field(default_factory=dict)

    @classmethod
    def build(cls, host: Graph, entries: Mapping[Pair, Union[Path, Sequence[int]]]) -> "PathSystem":
        """모든 경로가 host에서 해당 쌍의 최단경로인지 검사하며 생성"""
        system = cls.unchecked(host, entries)
        distances: Dict[int, list] = {}
        for (s, t), path in system.entries.items():
            if s not in distances:
                distances[s] = single_source_distances(host, s)
            if path.length != distances[s][t]:
                raise InvariantViolation(
                    f"stored path {list(path.nodes)} for ({s}, {t}) has length {path.length}, "
                    f"shortest is {distances[s][t]}"
                )
        return system

    @classmethod
    def unchecked(cls, host: Graph, entries: Mapping[Pair, Union[Path, Sequence[int]]]) -> "PathSystem":
        """최단성 검사 없이 생성 (간선 존재와 끝점만 확인)"""
        stored: Dict[Pair, Path] = {}
        for (s, t), raw in entries.items():
            nodes = raw.nodes if isinstance(raw, Path) else tuple(raw)
            path = Path.from_nodes(host, nodes)
            if (path.source, path.target) != (s, t):
                raise InvariantViolation(f"path {list(path.nodes)} does not join pair ({s}, {t})")
            stored[(s, t)] = path
        return cls(host, stored)

    @property
    def pairs(self) -> PairSet:
        return PairSet(self.host.n, tuple(self.entries))

    def path(self, s: int, t: int) -> Optional[Path]:
        return self.entries.get((s, t))

    def edge_keys(self) -> Set[Pair]:
        """π(P): 저장된 경로의 간선 합집합 (무방향은 정규화)"""
        keys = set()
        for path in self.entries.values():
            for a, b in path.steps():
                keys.add(normalize_edge(a, b, self.host.directed))
        return keys

    def to_dict(self) -> Dict[str, Any]:
        return {
            "pairs": [[s, t] for s, t in self.entries],
            "paths": [list(p.nodes) for p in self.entries.values()],
        }


@dataclass(frozen=True)
class SourceTree:
    """출발점 s의 트리 T_s = (V, π(P_s)), 간선은 s에서 멀어지는 방향"""
    source: int
    edges: Tuple[Pair, ...]
    layer: Dict[int, int]
    repairs: int = 0

    @classmethod
    def from_parents(cls, source: int, parent: Mapping[int, int], layer: Mapping[int, int],
                     repairs: int = 0) -> "SourceTree":
        edges = tuple(sorted((p, c) for c, p in parent.items()))
        nodes = {source} | set(parent)
        return cls(source, edges, {v: layer[v] for v in sorted(nodes)}, repairs)

    @cached_property
    def children(self) -> Dict[int, List[int]]:
        table: Dict[int, List[int]] = {}
        for x, y in self.edges:
            table.setdefault(x, []).append(y)
        for row in table.values():
            row.sort()
        return table

    @cached_property
    def parent(self) -> Dict[int, int]:
        """자식 -> 부모 (트리가 아니면 마지막 간선이 남는다; 검증은 check_lazy 몫)"""
        return {y: x for x, y in self.edges}

    @cached_property
    def branching(self) -> FrozenSet[Pair]:
        """B(T_s): 나가는 차수 2 이상인 노드에서 나가는 간선"""
        return frozenset((x, y) for x, kids in self.children.items() if len(kids) >= 2 for y in kids)

    def nodes(self) -> List[int]:
        return sorted({self.source} | {v for e in self.edges for v in e})

    def leaves(self) -> List[int]:
        return sorted(v for v in self.nodes() if v not in self.children and v != self.source)

    def path_to(self, target: int) -> Optional[Tuple[int, ...]]:
        """트리에서 source -> target 경로"""
        nodes = [target]
        seen = {target}
        node = target
        while node != self.source:
            node = self.parent.get(node)
            if node is None or node in seen:
                return None
            seen.add(node)
            nodes.append(node)
        return tuple(reversed(nodes))

    def undirected_edges(self) -> Set[Pair]:
        return {normalize_edge(x, y, False) for x, y in self.edges}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "source": self.source,
            "edges": [list(e) for e in self.edges],
            "layer": {str(k): v for k, v in self.layer.items()},
            "branching": [list(e) for e in sorted(self.branching)],
            "repairs": self.repairs,
        }
