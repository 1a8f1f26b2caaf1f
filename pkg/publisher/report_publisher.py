"""
Report Publisher - 리포트 직렬화와 산출물 파일 기록
"""
import hashlib
import io
import json
import logging
import os
from typing import Any, Dict, Iterable, Optional

from rich.console import Console
from rich.table import Table

from models.report import Report

logger = logging.getLogger(__name__)

FORMATS = ("json", "text")
TEXT_WIDTH = 100


def emit_report(report: Report, fmt: str = "json") -> str:
    """
    결정적 직렬화: json은 정렬된 키, text는 색 없는 고정 폭 표

    같은 리포트는 항상 바이트 단위로 같은 출력을 낸다.
    """
    if fmt == "json":
        return json.dumps(report.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"
    if fmt == "text":
        return _render_text(report)
    raise ValueError(f"unknown report format {fmt!r}, expected one of {FORMATS}")


def _render_text(report: Report) -> str:
    buffer = io.StringIO()
    console = Console(file=buffer, width=TEXT_WIDTH, color_system=None, force_terminal=False, highlight=False)

    console.print(f"command: {report.command}")
    console.print(f"status:  {report.status.value}")

    if report.inputs:
        inputs = Table(title="inputs", show_lines=False)
        inputs.add_column("file")
        inputs.add_column("sha256")
        for name, digest in sorted(report.inputs.items()):
            inputs.add_row(name, digest)
        console.print(inputs)

    metrics = Table(title="metrics")
    metrics.add_column("metric")
    metrics.add_column("value", justify="right")
    for name, value in sorted(report.metrics.items()):
        metrics.add_row(name, str(value))
    console.print(metrics)

    if report.violations:
        violations = Table(title=f"violations ({len(report.violations)})")
        violations.add_column("kind")
        violations.add_column("subject")
        violations.add_column("detail")
        for v in report.violations:
            violations.add_row(v["kind"], json.dumps(v["subject"]), v.get("detail", ""))
        console.print(violations)

    return buffer.getvalue()


def file_digest(path: str) -> str:
    """sha256 hex"""
    sha = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(65536), b""):
            sha.update(chunk)
    return sha.hexdigest()


def digests(paths: Iterable[Optional[str]]) -> Dict[str, str]:
    """입력 파일 이름 -> sha256 (None은 건너뜀)"""
    return {os.path.basename(p): file_digest(p) for p in paths if p}


class ReportPublisher:
    """리포트와 산출물을 stdout 또는 파일로 내보낸다"""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.config = config or {}
        self.fmt = self.config.get("report", {}).get("format", "json")

    def write_artifact(self, path: str, content: str) -> str:
        """산출물 기록. 상위 디렉토리가 없으면 만든다"""
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            f.write(content)
        logger.info("wrote %s (%d bytes)", path, len(content.encode("utf-8")))
        return path

    def publish(self, report: Report, fmt: Optional[str] = None, out: Optional[str] = None) -> str:
        """
        리포트 텍스트를 반환하고, out이 주어지면 파일로도 기록

        Returns:
            직렬화된 리포트
        """
        text = emit_report(report, fmt or self.fmt)
        if out:
            self.write_artifact(out, text)
        logger.debug("report %s: %s, %d violation(s)", report.command, report.status.value, len(report.violations))
        return text
