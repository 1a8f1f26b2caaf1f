"""
Lower-Bound Instance Models - 외부/내부 인스턴스와 obstacle product 결과
"""
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any, Dict, Optional, Tuple

from models.errors import InvariantViolation
from models.graph import Graph, Pair, PairSet


class ProductMode(Enum):
    """obstacle product 방식"""
    WEIGHTED = "weighted"
    UNWEIGHTED = "unweighted"


@dataclass(frozen=True)
class OuterInstance:
    """3층 외부 그래프 G_O: first(L1) - middle - last(L3)"""
    graph: Graph
    pairs: PairSet
    degree: int
    first: Tuple[int, ...]
    middle: Tuple[int, ...]
    last: Tuple[int, ...]

    def __post_init__(self):
        layers = (set(self.first), set(self.middle), set(self.last))
        if sum(len(layer) for layer in layers) != self.graph.n or set().union(*layers) != set(range(self.graph.n)):
            raise InvariantViolation("outer layers must partition the node set")

    def layer_of(self, node: int) -> int:
        if node in self.first:
            return 0
        if node in self.middle:
            return 1
        return 2

    def layers(self) -> Dict[int, int]:
        return {v: self.layer_of(v) for v in range(self.graph.n)}

    @classmethod
    def from_layers(cls, graph: Graph, pairs: PairSet, layers: Dict[int, int]) -> "OuterInstance":
        """층 주석(0/1/2)이 달린 그래프 파일에서 생성. D는 첫 middle 노드의 차수"""
        missing = [v for v in range(graph.n) if v not in layers]
        if missing:
            raise InvariantViolation(f"outer node(s) {missing} have no layer annotation")
        first = tuple(v for v in range(graph.n) if layers[v] == 0)
        middle = tuple(v for v in range(graph.n) if layers[v] == 1)
        last = tuple(v for v in range(graph.n) if layers[v] == 2)
        degree = graph.degree(middle[0]) if middle else 0
        return cls(graph, pairs, degree, first, middle, last)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "graph": self.graph.to_dict(),
            "pairs": self.pairs.to_dict(),
            "degree": self.degree,
            "first": list(self.first),
            "middle": list(self.middle),
            "last": list(self.last),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "OuterInstance":
        return cls(
            graph=Graph.from_dict(data["graph"]),
            pairs=PairSet.from_dict(data["pairs"]),
            degree=data["degree"],
            first=tuple(data["first"]),
            middle=tuple(data["middle"]),
            last=tuple(data["last"]),
        )


@dataclass(frozen=True)
class InnerInstance:
    """
    내부 그래프 G_I

    layers가 있으면 층 구조 인스턴스: 0..ell-1 층, 모든 쌍은 0층 -> ell-1층
    """
    graph: Graph
    pairs: PairSet
    path_lengths: Dict[Pair, int] = field(default_factory=dict)
    layers: Optional[Dict[int, int]] = None
    ell: Optional[int] = None

    @property
    def layered(self) -> bool:
        return self.layers is not None

    @property
    def max_demanded_distance(self) -> int:
        """D_I"""
        return max(self.path_lengths.values(), default=0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "graph": self.graph.to_dict(),
            "pairs": self.pairs.to_dict(),
            "path_lengths": [[s, t, d] for (s, t), d in self.path_lengths.items()],
            "layers": None if self.layers is None else [[v, k] for v, k in sorted(self.layers.items())],
            "ell": self.ell,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "InnerInstance":
        layers = data.get("layers")
        return cls(
            graph=Graph.from_dict(data["graph"]),
            pairs=PairSet.from_dict(data["pairs"]),
            path_lengths={(s, t): d for s, t, d in data["path_lengths"]},
            layers=None if layers is None else {v: k for v, k in layers},
            ell=data.get("ell"),
        )


@dataclass(frozen=True)
class Replacement:
    """middle 노드 v 자리에 들어간 내부 복사본과 (c, z) <-> (q, r) 대응"""
    middle: int
    offset: int
    inner: InnerInstance
    correspondence: Tuple[Tuple[Pair, Pair], ...] = ()

    def contains(self, node: int) -> bool:
        return self.offset <= node < self.offset + self.inner.graph.n

    def local(self, node: int) -> int:
        """합성 그래프 id -> 내부 그래프 id"""
        return node - self.offset

    def to_dict(self) -> Dict[str, Any]:
        return {
            "middle": self.middle,
            "offset": self.offset,
            "inner": self.inner.to_dict(),
            "correspondence": [[list(outer), list(inner)] for outer, inner in self.correspondence],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Replacement":
        return cls(
            middle=data["middle"],
            offset=data["offset"],
            inner=InnerInstance.from_dict(data["inner"]),
            correspondence=tuple((tuple(o), tuple(i)) for o, i in data["correspondence"]),
        )


@dataclass(frozen=True)
class ObstacleInstance:
    """obstacle product로 만든 합성 그래프, 부분집합 S, 요구 쌍 P_O"""
    graph: Graph
    first: Tuple[int, ...]
    last: Tuple[int, ...]
    demanded: PairSet
    replacements: Tuple[Replacement, ...]
    scale: int
    mode: ProductMode
    outer_map: Dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        subset = set(self.subset)
        for s, t in self.demanded:
            if s not in subset or t not in subset:
                raise InvariantViolation(f"demanded pair ({s}, {t}) leaves the subset S")

    @property
    def subset(self) -> Tuple[int, ...]:
        """S = 첫 층 ∪ 마지막 층"""
        return tuple(sorted(self.first + self.last))

    @cached_property
    def _routes(self) -> Dict[Pair, Tuple[Replacement, Pair]]:
        table = {}
        for replacement in self.replacements:
            for outer, inner in replacement.correspondence:
                table[outer] = (replacement, inner)
        return table

    def route(self, c: int, z: int) -> Tuple[Replacement, Pair]:
        """요구 쌍 (c, z)가 지나야 할 내부 복사본과 내부 쌍 (q, r)"""
        try:
            return self._routes[(c, z)]
        except KeyError:
            raise InvariantViolation(f"demanded pair ({c}, {z}) has no inner correspondence") from None

    def node_count_breakdown(self) -> Tuple[int, int, int]:
        """(|L1|, |L3|, Σ 내부 노드 수)"""
        return len(self.first), len(self.last), sum(r.inner.graph.n for r in self.replacements)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "graph": self.graph.to_dict(),
            "first": list(self.first),
            "last": list(self.last),
            "demanded": self.demanded.to_dict(),
            "replacements": [r.to_dict() for r in self.replacements],
            "scale": self.scale,
            "mode": self.mode.value,
            "outer_map": [[k, v] for k, v in sorted(self.outer_map.items())],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ObstacleInstance":
        return cls(
            graph=Graph.from_dict(data["graph"]),
            first=tuple(data["first"]),
            last=tuple(data["last"]),
            demanded=PairSet.from_dict(data["demanded"]),
            replacements=tuple(Replacement.from_dict(r) for r in data["replacements"]),
            scale=data["scale"],
            mode=ProductMode(data["mode"]),
            outer_map={k: v for k, v in data["outer_map"]},
        )
