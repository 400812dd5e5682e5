"""Отчёты проверок: замыкание ограничений и проверка выводов."""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Optional, Tuple

from src.domain.entities.types import Constraint


@dataclass(frozen=True)
class ClosureReport:
    """Замкнутое множество, флаг совместности и свидетель несовместности."""

    closed: FrozenSet[Constraint]
    consistent: bool
    witness: Optional[Constraint] = None


@dataclass(frozen=True)
class CheckReport:
    """Итог проверки вывода.

    ``node_path``: индексы посылок от корня до первого неверного узла.
    Отчёт приводится к ``bool``, поэтому его можно использовать в ``if``.
    """

    ok: bool
    node_path: Tuple[int, ...] = ()
    rule: str | None = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def success(cls) -> "CheckReport":
        return cls(True)

    def describe(self) -> str:
        if self.ok:
            return "ok"
        path = "/".join(str(i) for i in self.node_path) or "root"
        return f"node {path} ({self.rule}): {self.reason}"


__all__ = ["ClosureReport", "CheckReport"]
