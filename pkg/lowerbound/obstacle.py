"""
Obstacle Product - middle 노드를 내부 그래프 복사본으로 교체한 하한 인스턴스

가중 방식: 외부 간선 가중치에 scale = 2 * D_I 를 곱한다 (D_I = 내부 요구 거리의 최댓값).
무가중 방식: 층 구조 내부 그래프를 쓰고 c는 첫 층 q에, z는 마지막 층 r에만 잇는다.
"""
import logging
from typing import Callable, Dict, Iterable, List, Optional, Set, Tuple, Union

from models.errors import (
    InvariantViolation,
    LayerMismatch,
    PairCountMismatch,
    PreconditionFailed,
    ShapeMismatch,
)
from models.graph import Graph, Pair, PairSet, normalize_edge
from models.lowerbound import InnerInstance, ObstacleInstance, OuterInstance, ProductMode, Replacement
from models.report import Violation
from pathfinder.shortest_paths import (
    DEFAULT_CAP,
    enumerate_shortest_paths,
    has_unique_shortest_path,
    single_source_distances,
)

logger = logging.getLogger(__name__)

InnerFactory = Callable[[int, int], InnerInstance]


def _pairs_by_middle(outer: OuterInstance) -> Dict[int, List[Pair]]:
    """각 요구 쌍 (c, z)를 c, z 모두와 인접한 유일한 middle 노드에 배정"""
    grouped: Dict[int, List[Pair]] = {v: [] for v in outer.middle}
    for c, z in outer.pairs:
        through = [v for v in outer.middle if outer.graph.has_edge(c, v) and outer.graph.has_edge(v, z)]
        if len(through) != 1:
            raise InvariantViolation(f"outer pair ({c}, {z}) passes through {len(through)} middle node(s)")
        grouped[through[0]].append((c, z))
    return grouped


def obstacle_product(
    outer: OuterInstance,
    inner_factory: InnerFactory,
    mode: Union[ProductMode, str] = ProductMode.WEIGHTED,
    scale: Optional[int] = None,
) -> ObstacleInstance:
    """
    Args:
        outer: 3층 외부 인스턴스
        inner_factory: (middle 노드, 필요한 쌍 수) -> 내부 인스턴스
        mode: weighted | unweighted
        scale: 가중 방식의 외부 가중치 배수 (기본값 2 * D_I)

    Raises:
        PairCountMismatch: 내부 쌍 수가 middle을 지나는 외부 쌍 수와 다를 때
        LayerMismatch: 무가중 방식에서 층 구조가 없거나 ell이 서로 다를 때
    """
    mode = ProductMode(mode)
    if outer.graph.directed:
        raise ShapeMismatch("obstacle product needs an undirected outer graph")

    grouped = _pairs_by_middle(outer)
    inners: Dict[int, InnerInstance] = {}
    for v in outer.middle:
        inner = inner_factory(v, len(grouped[v]))
        if len(inner.pairs) != len(grouped[v]):
            raise PairCountMismatch(
                f"middle node {v} carries {len(grouped[v])} outer pair(s), inner instance has {len(inner.pairs)}"
            )
        if inner.graph.directed:
            raise ShapeMismatch(f"inner instance for middle node {v} is directed")
        inners[v] = inner

    if mode is ProductMode.UNWEIGHTED:
        if outer.graph.weighted and any(w != 1 for _, _, w in outer.graph.edges):
            raise ShapeMismatch("unweighted obstacle product needs unit outer weights")
        ells = set()
        for v, inner in inners.items():
            if not inner.layered:
                raise LayerMismatch(f"inner instance for middle node {v} is not layered")
            if inner.graph.weighted:
                raise ShapeMismatch(f"inner instance for middle node {v} is weighted")
            for q, r in inner.pairs:
                if inner.layers[q] != 0 or inner.layers[r] != inner.ell - 1:
                    raise LayerMismatch(f"inner pair ({q}, {r}) of middle node {v} does not span first -> last layer")
            ells.add(inner.ell)
        if len(ells) > 1:
            raise LayerMismatch(f"inner instances disagree on the layer count: {sorted(ells)}")
        factor = 1
        weighted = False
    else:
        factor = scale if scale is not None else 2 * max((i.max_demanded_distance for i in inners.values()), default=0)
        if factor < 1:
            raise InvariantViolation(f"outer weight scale must be positive, got {factor}")
        weighted = True

    # 합성 그래프 id: 외부 non-middle 노드 먼저, 그다음 middle 순서대로 내부 복사본
    middle = set(outer.middle)
    outer_map = {u: i for i, u in enumerate(u for u in range(outer.graph.n) if u not in middle)}
    offset = len(outer_map)

    edges: List[Tuple[int, int, int]] = []
    replacements: List[Replacement] = []
    for v in outer.middle:
        inner = inners[v]
        for a, b, w in inner.graph.edges:
            edges.append((a + offset, b + offset, w))

        correspondence = []
        for (c, z), (q, r) in zip(grouped[v], inner.pairs):
            cq, rz = q + offset, r + offset
            edges.append((outer_map[c], cq, outer.graph.weight(c, v) * factor))
            edges.append((rz, outer_map[z], outer.graph.weight(v, z) * factor))
            correspondence.append(((outer_map[c], outer_map[z]), (cq, rz)))

        replacements.append(Replacement(v, offset, inner, tuple(correspondence)))
        offset += inner.graph.n

    for u, v, w in outer.graph.edges:
        if u not in middle and v not in middle:
            edges.append((outer_map[u], outer_map[v], w * factor))

    graph = Graph(offset, False, weighted, tuple(edges))
    demanded = PairSet(graph.n, tuple((outer_map[c], outer_map[z]) for c, z in outer.pairs))
    inst = ObstacleInstance(
        graph,
        tuple(outer_map[u] for u in outer.first),
        tuple(outer_map[u] for u in outer.last),
        demanded,
        tuple(replacements),
        factor,
        mode,
        outer_map,
    )

    first, last, inner_nodes = inst.node_count_breakdown()
    if graph.n != first + last + inner_nodes:
        raise InvariantViolation(f"composed node count {graph.n} != {first} + {last} + {inner_nodes}")

    logger.info(
        "obstacle product (%s): %d node(s), %d edge(s), %d demanded pair(s), scale %d",
        mode.value, graph.n, graph.m, len(demanded), factor,
    )
    return inst


def _inner_distance(replacement: Replacement, q: int, r: int) -> int:
    return single_source_distances(replacement.inner.graph, replacement.local(q))[replacement.local(r)]


def check_path_structure(inst: ObstacleInstance, cap: int = DEFAULT_CAP) -> List[Violation]:
    """
    모든 요구 쌍 (c, z)의 모든 최단경로가
    (c, q) + 지정된 내부 복사본 안의 최단 q -> r 경로 + (r, z) 형태인지 검사

    Raises:
        CapExceeded: 최단경로가 cap 개보다 많을 때
    """
    graph = inst.graph
    violations: List[Violation] = []
    for c, z in inst.demanded:
        replacement, (q, r) = inst.route(c, z)
        inner_dist = _inner_distance(replacement, q, r)

        for path in enumerate_shortest_paths(graph, c, z, cap):
            nodes = path.nodes
            inner_part = nodes[1:-1]
            conforming = (
                len(nodes) >= 3
                and nodes[1] == q
                and nodes[-2] == r
                and all(replacement.contains(x) for x in inner_part)
                and sum(graph.weight(a, b) for a, b in zip(inner_part, inner_part[1:])) == inner_dist
            )
            if not conforming:
                violations.append(Violation(
                    "nonconforming_path",
                    (c, z),
                    f"shortest path {list(nodes)} does not pass ({c}, {q}) ~> ({r}, {z}) inside copy of {replacement.middle}",
                ))
    return violations


def forced_edges(inst: ObstacleInstance, cap: int = DEFAULT_CAP) -> Set[Pair]:
    """
    모든 보존자가 가져야 하는 간선: 내부 쌍의 유일한 내부 경로 + 요구 쌍마다 (c, q), (r, z)

    Raises:
        PreconditionFailed: 경로 구조가 깨졌거나 내부 최단경로가 유일하지 않을 때
    """
    structure = check_path_structure(inst, cap)
    if structure:
        raise PreconditionFailed(f"path structure check failed with {len(structure)} violation(s)")

    forced: Set[Pair] = set()
    for replacement in inst.replacements:
        inner = replacement.inner
        for (c, z), (q, r) in replacement.correspondence:
            lq, lr = replacement.local(q), replacement.local(r)
            if not has_unique_shortest_path(inner.graph, lq, lr):
                raise PreconditionFailed(f"inner pair ({lq}, {lr}) of middle node {replacement.middle} is not unique")
            path = enumerate_shortest_paths(inner.graph, lq, lr, cap=1)[0]
            for a, b in path.steps():
                forced.add(normalize_edge(a + replacement.offset, b + replacement.offset, False))
            forced.add(normalize_edge(c, q, False))
            forced.add(normalize_edge(r, z, False))
    return forced


def forced_edge_count(inst: ObstacleInstance, cap: int = DEFAULT_CAP) -> int:
    """모든 보존자 크기의 하한"""
    return len(forced_edges(inst, cap))


def necessity_sweep(inst: ObstacleInstance, edges: Optional[Iterable[Pair]] = None) -> List[Pair]:
    """
    간선 하나씩 지워 보고 요구 거리가 하나도 바뀌지 않는 간선을 반환 (빈 목록 = 전부 필요)
    """
    candidates = sorted(forced_edges(inst) if edges is None else set(edges))
    by_source = inst.demanded.by_source()
    baseline = {s: single_source_distances(inst.graph, s) for s in by_source}

    unnecessary: List[Pair] = []
    for edge in candidates:
        reduced = inst.graph.without_edges([edge])
        changed = False
        for s, group in by_source.items():
            dist = single_source_distances(reduced, s)
            if any(dist[t] != baseline[s][t] for _, t in group):
                changed = True
                break
        if not changed:
            unnecessary.append(edge)

    logger.debug("necessity sweep: %d/%d edge(s) removable", len(unnecessary), len(candidates))
    return unnecessary
