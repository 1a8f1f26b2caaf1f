"""
Preserver Models - 보존자, 이분 리프트, 유도 매칭 분할
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, FrozenSet, List, Tuple

from models.graph import Graph, Pair, PairSet


@dataclass(frozen=True)
class GroupCertificate:
    """dw 보존자 그룹 하나의 분기 삼중쌍 증명서"""
    pairs: int
    oriented_edges: int
    branching_triples: int
    triple_bound: int

    def to_dict(self) -> Dict[str, int]:
        return {
            "pairs": self.pairs,
            "oriented_edges": self.oriented_edges,
            "branching_triples": self.branching_triples,
            "triple_bound": self.triple_bound,
        }


@dataclass(frozen=True)
class Preserver:
    """보존자 H와 간선별 소유 쌍"""
    subgraph: Graph
    demanded: PairSet
    provenance: Dict[Pair, Pair] = field(default_factory=dict)
    groups: Tuple[GroupCertificate, ...] = ()

    @property
    def edge_count(self) -> int:
        return self.subgraph.m

    def to_dict(self) -> Dict[str, Any]:
        """딕셔너리로 변환"""
        return {
            "subgraph": self.subgraph.to_dict(),
            "demanded": self.demanded.to_dict(),
            "provenance": [[list(e), list(p)] for e, p in sorted(self.provenance.items())],
            "groups": [g.to_dict() for g in self.groups],
        }


class Parity(Enum):
    """원래 거리의 홀짝"""
    EVEN = "even"
    ODD = "odd"


@dataclass(frozen=True)
class LiftResult:
    """
    이분 보존자 리프트 G', P'

    노드 x의 복사본: x_1 = x, x_2 = x + n (n = 원래 노드 수)
    """
    original_n: int
    lifted: Graph
    lifted_pairs: PairSet
    parity: Dict[Pair, Parity] = field(default_factory=dict)

    def copy_of(self, node: int, side: int) -> int:
        return node if side == 1 else node + self.original_n

    def origin(self, lifted_node: int) -> Tuple[int, int]:
        """리프트 노드 -> (원래 노드, 쪽)"""
        if lifted_node < self.original_n:
            return lifted_node, 1
        return lifted_node - self.original_n, 2

    def lifted_pairs_for(self, s: int, t: int) -> Tuple[Pair, Pair]:
        """원래 쌍 (s, t)에 대응하는 두 리프트 쌍"""
        if self.parity[(s, t)] is Parity.EVEN:
            return (s, t), (self.copy_of(s, 2), self.copy_of(t, 2))
        return (s, self.copy_of(t, 2)), (self.copy_of(s, 2), t)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "original_n": self.original_n,
            "lifted": self.lifted.to_dict(),
            "lifted_pairs": self.lifted_pairs.to_dict(),
            "parity": [[list(p), v.value] for p, v in sorted(self.parity.items())],
        }


@dataclass(frozen=True)
class MatchingPartition:
    """E_H' \\ ∪B(T_s)를 (s, dist(s,u) mod 3) 클래스로 나눈 분할"""
    classes: Dict[Tuple[int, int], FrozenSet[Pair]]
    leftover_branching: FrozenSet[Pair]
    owners: Dict[Pair, int] = field(default_factory=dict)

    def class_sizes(self) -> Dict[Tuple[int, int], int]:
        return {key: len(edges) for key, edges in sorted(self.classes.items())}

    def covered_edges(self) -> FrozenSet[Pair]:
        covered = set()
        for edges in self.classes.values():
            covered |= edges
        return frozenset(covered)

    def largest_classes(self, k: int) -> List[Tuple[Tuple[int, int], int]]:
        """크기 순 상위 k개 클래스 (분석용, 간선을 버리지 않는다)"""
        ranked = sorted(self.class_sizes().items(), key=lambda item: (-item[1], item[0]))
        return ranked[:k]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "classes": [
                {"source": s, "residue": i, "edges": [list(e) for e in sorted(edges)]}
                for (s, i), edges in sorted(self.classes.items())
            ],
            "leftover_branching": [list(e) for e in sorted(self.leftover_branching)],
        }
