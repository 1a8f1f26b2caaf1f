"""
Edge-List Format - 그래프/쌍 텍스트 파일 읽기와 쓰기

그래프 파일:
    n=<int> directed=<0|1> weighted=<0|1>
    u v [w]
    layer <node> <int>
쌍 파일:
    s t
'#' 뒤는 주석.
"""
import json
import re
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from models.errors import ParseError
from models.graph import Graph, Pair, PairSet, normalize_edge
from models.lowerbound import ObstacleInstance

HEADER_RE = re.compile(r"^n=(\d+)\s+directed=([01])\s+weighted=([01])$")
LAYER_RE = re.compile(r"^layer\s+(\S+)\s+(\S+)$")


@dataclass(frozen=True)
class ParsedGraph:
    """parse_graph 결과"""
    graph: Graph
    pairs: PairSet
    layers: Optional[Dict[int, int]] = None


def _content_lines(text: str):
    """(줄 번호, 주석을 뗀 내용) - 빈 줄은 건너뛴다"""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def _ints(tokens: List[str], number: int, source: Optional[str]) -> List[int]:
    try:
        return [int(tok) for tok in tokens]
    except ValueError:
        raise ParseError(number, f"expected integers, got {' '.join(tokens)!r}", source) from None


def _node(value: int, n: int, number: int, source: Optional[str]) -> int:
    if not 0 <= value < n:
        raise ParseError(number, f"node {value} is not in 0..{n - 1}", source)
    return value


def parse_pairs(text: str, n: int, source: Optional[str] = None) -> List[Pair]:
    """쌍 파일 파싱 (검증은 PairSet 몫)"""
    pairs: List[Pair] = []
    for number, line in _content_lines(text):
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(number, f"pair line needs 2 fields, got {len(tokens)}", source)
        s, t = _ints(tokens, number, source)
        pairs.append((_node(s, n, number, source), _node(t, n, number, source)))
    return pairs


def parse_graph(
    text: str,
    pairs_text: Optional[str] = None,
    source: Optional[str] = None,
    pairs_source: Optional[str] = None,
) -> ParsedGraph:
    """
    그래프 파일 (+ 쌍 파일) -> 검증된 Graph, PairSet, 층 주석

    Raises:
        ParseError: 형식 오류 (줄 번호 포함)
        InvariantViolation: 형식은 맞지만 도메인 불변식을 깨뜨릴 때 (가중치 0, 끊어진 쌍 등)
    """
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError(1, "empty graph file", source)

    number, header = lines[0]
    match = HEADER_RE.match(header)
    if not match:
        raise ParseError(number, "header must be 'n=<int> directed=<0|1> weighted=<0|1>'", source)
    n = int(match.group(1))
    directed = match.group(2) == "1"
    weighted = match.group(3) == "1"

    edges: List[Tuple[int, int, int]] = []
    seen: Dict[Pair, int] = {}
    layers: Dict[int, int] = {}

    for number, line in lines[1:]:
        layer_match = LAYER_RE.match(line)
        if layer_match:
            node, layer = _ints(list(layer_match.groups()), number, source)
            node = _node(node, n, number, source)
            if node in layers:
                raise ParseError(number, f"node {node} has two layer annotations", source)
            layers[node] = layer
            continue

        tokens = line.split()
        if len(tokens) not in (2, 3):
            raise ParseError(number, f"edge line needs 2 or 3 fields, got {len(tokens)}", source)
        values = _ints(tokens, number, source)
        u, v = _node(values[0], n, number, source), _node(values[1], n, number, source)
        w = values[2] if len(values) == 3 else 1

        key = normalize_edge(u, v, directed)
        if key in seen:
            raise ParseError(number, f"duplicate edge ({u}, {v}), first on line {seen[key]}", source)
        seen[key] = number
        edges.append((u, v, w))

    graph = Graph(n, directed, weighted, tuple(edges))

    pairs = PairSet(n)
    if pairs_text is not None:
        pairs = PairSet.for_graph(graph, parse_pairs(pairs_text, n, pairs_source))

    return ParsedGraph(graph, pairs, layers or None)


def serialize_graph(
    graph: Graph,
    layers: Optional[Mapping[int, int]] = None,
    provenance: Optional[Mapping[Pair, Pair]] = None,
) -> str:
    """그래프 파일 텍스트. provenance가 있으면 간선마다 소유 쌍을 주석으로 단다"""
    lines = [f"n={graph.n} directed={int(graph.directed)} weighted={int(graph.weighted)}"]
    for u, v, w in graph.edges:
        line = f"{u} {v} {w}" if graph.weighted else f"{u} {v}"
        if provenance and (u, v) in provenance:
            s, t = provenance[(u, v)]
            line += f"  # pair {s} {t}"
        lines.append(line)
    for node, layer in sorted((layers or {}).items()):
        lines.append(f"layer {node} {layer}")
    return "\n".join(lines) + "\n"


def serialize_pairs(pairs: PairSet) -> str:
    return "".join(f"{s} {t}\n" for s, t in pairs)


def dump_instance(inst: ObstacleInstance) -> str:
    """ObstacleInstance JSON 매니페스트"""
    return json.dumps(inst.to_dict(), sort_keys=True, indent=2) + "\n"


def load_instance(text: str, source: Optional[str] = None) -> ObstacleInstance:
    """
    Raises:
        ParseError: JSON 형식 오류 또는 필드 누락
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.lineno, e.msg, source) from None
    try:
        return ObstacleInstance.from_dict(data)
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(1, f"malformed instance manifest: {e}", source) from None
