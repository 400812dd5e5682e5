"""Файловое хранилище JSON-отчётов.

Отчёты пишутся в ``storage/reports`` по умолчанию: сначала во временный
файл, затем ``replace`` поверх целевого, поэтому читатель не увидит
половину файла. Запись каноническая (:func:`dumps`).
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict

from src.domain.interfaces.report_store import IReportStore
from src.infrastructure.logging.logging_setup import log_stage
from src.infrastructure.parsing.json_codec import dumps

_LOG = __name__


def _key_to_filename(key: str) -> str:
    """Ключ -> безопасное и стабильное имя файла."""

    cleaned = (
        key.replace("\\", "__")
        .replace("/", "__")
        .replace(":", "_")
        .replace(" ", "_")
    )
    return f"{cleaned}.json"


class FileReportStore(IReportStore):  # type: ignore[misc]
    def __init__(self, base_dir: str | Path | None = None) -> None:
        if base_dir is None:
            base_dir = Path("storage") / "reports"
        self._base_dir = Path(base_dir)
        self._base_dir.mkdir(parents=True, exist_ok=True)

    def path_for(self, key: str) -> Path:
        return self._base_dir / _key_to_filename(key)

    def save_report(self, key: str, report: Dict[str, Any]) -> Path:  # type: ignore[override]
        path = self.path_for(key)
        tmp_path = path.with_suffix(path.suffix + ".tmp")
        try:
            tmp_path.write_text(dumps(report), encoding="utf-8")
            tmp_path.replace(path)
        except OSError as exc:
            log_stage("ERROR", "Не удалось сохранить отчёт", _LOG, key=key, path=str(path), error=str(exc))
            raise
        log_stage("STATE", "Отчёт сохранён", _LOG, key=key, path=str(path))
        return path

    def load_report(self, key: str) -> Dict[str, Any] | None:  # type: ignore[override]
        path = self.path_for(key)
        if not path.is_file():
            return None
        try:
            report = json.loads(path.read_text(encoding="utf-8"))
            if not isinstance(report, dict):
                raise ValueError("Report root must be a JSON object")
        except (OSError, ValueError) as exc:
            log_stage("ERROR", "Не удалось загрузить отчёт", _LOG, key=key, path=str(path), error=str(exc))
            return None
        log_stage("LOAD", "Отчёт загружен", _LOG, key=key, path=str(path))
        return report


__all__ = ["FileReportStore"]
