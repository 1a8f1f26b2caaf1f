"""
Error hierarchy for the Preserver Toolkit
"""
from typing import Any, Optional, Tuple


class PreserverError(Exception):
    """모든 도구 오류의 기반 클래스"""


class InvariantViolation(PreserverError):
    """입력이 도메인 불변식을 깨뜨림"""

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class InvalidNode(InvariantViolation):
    def __init__(self, node: Any, n: int):
        super().__init__(f"node {node} is not in 0..{n - 1}")
        self.node = node


class ShapeMismatch(InvariantViolation):
    """노드 수 / directed / weighted 플래그 불일치"""


class Disconnected(InvariantViolation):
    def __init__(self, pair: Tuple[int, int]):
        super().__init__(f"pair {pair} is not connected in the host graph")
        self.pair = pair


class NotBipartite(InvariantViolation):
    pass


class NotDirected(InvariantViolation):
    pass


class OddDegree(InvariantViolation):
    pass


class PairCountMismatch(InvariantViolation):
    pass


class LayerMismatch(InvariantViolation):
    pass


class NotDisjointSystem(InvariantViolation):
    """쌍별 최단경로가 유일/간선 서로소가 아니거나 합집합이 전체 간선이 아님"""


class CapExceeded(PreserverError):
    def __init__(self, source: int, target: int, cap: int):
        super().__init__(f"more than {cap} shortest paths from {source} to {target}")
        self.source = source
        self.target = target
        self.cap = cap


class OwnerNotFound(PreserverError):
    def __init__(self, edge: Tuple[int, int]):
        super().__init__(f"edge {edge} lies in no source tree")
        self.edge = edge


class PreconditionFailed(PreserverError):
    pass


class RepairBudgetExceeded(PreserverError):
    def __init__(self, source: int, budget: int):
        super().__init__(f"lazy repair for source {source} exceeded {budget} iterations")
        self.source = source
        self.budget = budget


class CertificateError(PreserverError):
    """구성 결과가 크기 증명서(certificate)를 만족하지 못함"""


class ParseError(PreserverError):
    def __init__(self, line: int, reason: str, source: Optional[str] = None):
        where = f"{source}:{line}" if source else f"line {line}"
        super().__init__(f"{where}: {reason}")
        self.line = line
        self.reason = reason
