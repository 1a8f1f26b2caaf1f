"""
Report Models - 검사 결과와 CLI 리포트
"""
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

REQUIRED_METRICS = ("node_count", "edge_count", "pair_count")


def _plain(value: Any) -> Any:
    """튜플/집합을 JSON 친화적인 리스트로"""
    if isinstance(value, (tuple, list)):
        return [_plain(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(_plain(v) for v in value)
    return value


@dataclass(frozen=True)
class Violation:
    """검사기가 보고하는 위반 한 건"""
    kind: str
    subject: Tuple[Any, ...]
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        """딕셔너리로 변환"""
        return {
            "kind": self.kind,
            "subject": _plain(self.subject),
            "detail": self.detail,
        }


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"


class Report(BaseModel):
    """서브커맨드 실행 결과"""
    model_config = ConfigDict(frozen=True)

    command: str
    inputs: Dict[str, str] = Field(default_factory=dict)
    metrics: Dict[str, int]
    violations: List[Dict[str, Any]] = Field(default_factory=list)
    status: Status

    @model_validator(mode="after")
    def _check_consistency(self) -> "Report":
        missing = [key for key in REQUIRED_METRICS if key not in self.metrics]
        if missing:
            raise ValueError(f"metrics missing required keys: {', '.join(missing)}")
        expected = Status.PASS if not self.violations else Status.FAIL
        if self.status != expected:
            raise ValueError(f"status {self.status.value} contradicts {len(self.violations)} violation(s)")
        return self

    @classmethod
    def build(
        cls,
        command: str,
        metrics: Dict[str, int],
        violations: List[Violation] = (),
        inputs: Dict[str, str] = None,
    ) -> "Report":
        """위반 목록에서 status를 유도해 생성"""
        records = [v.to_dict() if isinstance(v, Violation) else dict(v) for v in violations]
        return cls(
            command=command,
            inputs=dict(inputs or {}),
            metrics=dict(metrics),
            violations=records,
            status=Status.PASS if not records else Status.FAIL,
        )

    @property
    def passed(self) -> bool:
        return self.status == Status.PASS

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1
