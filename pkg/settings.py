"""
Settings - config.yaml + .env 로드와 로깅 설정
"""
import copy
import logging
import os
from logging.handlers import RotatingFileHandler
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv
from rich.console import Console
from rich.logging import RichHandler

BASE_DIR = os.path.dirname(os.path.abspath(__file__))
DEFAULT_CONFIG_PATH = os.path.join(BASE_DIR, "config.yaml")

DEFAULTS: Dict[str, Any] = {
    "enumeration": {"cap": 10000},
    "lazy": {"max_repairs": 100000},
    "report": {"format": "json"},
    "generator": {"seed": 0, "max_weight": 10},
    "logging": {"level": "WARNING", "file": None, "max_bytes": 10485760, "backup_count": 5},
}


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(path: Optional[str] = None) -> Dict[str, Any]:
    """
    기본값 위에 config.yaml을 덮어쓴 설정

    경로 우선순위: 인자 > PRESERVER_CONFIG > 저장소 루트의 config.yaml.
    파일이 없으면 기본값. ${VAR} 자리는 환경 변수로 치환한다.
    """
    path = path or os.getenv("PRESERVER_CONFIG") or DEFAULT_CONFIG_PATH
    load_dotenv(os.path.join(os.path.dirname(os.path.abspath(path)), ".env"))

    if not os.path.exists(path):
        return copy.deepcopy(DEFAULTS)

    with open(path, "r", encoding="utf-8") as f:
        loaded = yaml.safe_load(os.path.expandvars(f.read())) or {}
    if not isinstance(loaded, dict):
        raise ValueError(f"{path}: top level must be a mapping")
    return _merge(DEFAULTS, loaded)


def setup_logging(config: Dict[str, Any]) -> None:
    """RichHandler(stderr) + 선택적 RotatingFileHandler"""
    settings = config.get("logging", {})
    level = getattr(logging, str(settings.get("level", "WARNING")).upper(), logging.WARNING)

    handlers = [RichHandler(console=Console(stderr=True), rich_tracebacks=True, show_path=False)]
    log_file = settings.get("file")
    if log_file:
        directory = os.path.dirname(log_file)
        if directory:
            os.makedirs(directory, exist_ok=True)
        file_handler = RotatingFileHandler(
            log_file,
            maxBytes=int(settings.get("max_bytes", 10485760)),
            backupCount=int(settings.get("backup_count", 5)),
        )
        file_handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
        handlers.append(file_handler)

    logging.basicConfig(level=level, format="%(message)s", handlers=handlers, force=True)
