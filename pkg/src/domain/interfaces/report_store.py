"""Интерфейс (протокол) хранилища JSON-отчётов.

Отчёт: JSON-совместимый ``dict`` (сводка фаззера, множество выведенных
суждений). Ключ задаёт имя отчёта, например ``"fuzz-seed7"``.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Dict, Protocol, runtime_checkable


@runtime_checkable
class IReportStore(Protocol):
    """Сохранить и загрузить отчёт по строковому ключу."""

    def save_report(self, key: str, report: Dict[str, Any]) -> Path:
        """Записать отчёт и вернуть путь к нему.

        Одинаковые данные дают побайтно одинаковый файл.
        """

    def load_report(self, key: str) -> Dict[str, Any] | None:
        """Загрузить отчёт или вернуть ``None``, если его нет."""


__all__ = ["IReportStore"]
